"""Null models of colocation contact networks: parsing, shuffling, contact
inference, and SI spreading over WiFi session traces."""

from ._core import (
    ContactSequence,
    SessionTable,
    apply_contact_model,
    apply_null_model,
    clean_sessions,
    infer_contacts,
    load_contacts,
    load_sessions,
    null_models,
    simulate,
    synthesize,
    version,
    write_contacts,
    write_sessions,
)

__version__ = version()

__all__ = [
    "ContactSequence",
    "SessionTable",
    "apply_contact_model",
    "apply_null_model",
    "clean_sessions",
    "infer_contacts",
    "load_contacts",
    "load_sessions",
    "null_models",
    "simulate",
    "synthesize",
    "version",
    "write_contacts",
    "write_sessions",
]
