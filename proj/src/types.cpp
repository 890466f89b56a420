#include "coloc/types.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace coloc {

void SessionTable::canonicalize() {
  std::sort(records.begin(), records.end(), canonical_less);
}

void ContactSequence::sort_events() {
  std::sort(events.begin(), events.end(), event_less);
}

namespace {

struct ModelName {
  NullModel model;
  std::string_view name;
};

constexpr ModelName kModelNames[] = {
    {NullModel::kOriginal, "original"}, {NullModel::kLnTn, "ln-tn"}, {NullModel::kTlLn, "tl-ln"},
    {NullModel::kLn, "ln"},             {NullModel::kTn, "tn"},      {NullModel::kTl, "tl"},
    {NullModel::kEmpty, "empty"},       {NullModel::kDcwb, "dcwb"},  {NullModel::kDcb, "dcb"},
    {NullModel::kDcw, "dcw"},           {NullModel::kD, "d"},
};

} // namespace

std::string to_string(NullModel m) {
  for (const auto& entry : kModelNames)
    if (entry.model == m)
      return std::string(entry.name);
  return "?";
}

NullModel null_model_from_string(std::string_view s) {
  std::string normalized(s);
  for (char& c : normalized) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '_')
      c = '-';
  }
  for (const auto& entry : kModelNames)
    if (entry.name == normalized)
      return entry.model;
  std::string valid;
  for (const auto& entry : kModelNames) {
    if (!valid.empty())
      valid += ", ";
    valid += entry.name;
  }
  throw std::invalid_argument("unknown null model '" + std::string(s) + "' (valid: " + valid +
                              ")");
}

std::vector<NullModel> all_null_models() {
  std::vector<NullModel> out;
  for (const auto& entry : kModelNames)
    out.push_back(entry.model);
  return out;
}

bool is_inducement_model(NullModel m) {
  switch (m) {
  case NullModel::kOriginal:
  case NullModel::kLnTn:
  case NullModel::kTlLn:
  case NullModel::kLn:
  case NullModel::kTn:
  case NullModel::kTl:
  case NullModel::kEmpty:
    return true;
  default:
    return false;
  }
}

bool is_contact_model(NullModel m) {
  switch (m) {
  case NullModel::kDcwb:
  case NullModel::kDcb:
  case NullModel::kDcw:
  case NullModel::kD:
    return true;
  default:
    return false;
  }
}

RetainedCorrelations retained_correlations(NullModel m) {
  switch (m) {
  case NullModel::kOriginal:
    return {true, true, true};
  case NullModel::kLnTn:
    return {true, true, false};
  case NullModel::kTlLn:
    return {true, false, true};
  case NullModel::kLn:
    return {true, false, false};
  case NullModel::kTn:
    return {false, true, false};
  case NullModel::kTl:
    return {false, false, true};
  case NullModel::kEmpty:
    return {false, false, false};
  default:
    return {};
  }
}

} // namespace coloc
