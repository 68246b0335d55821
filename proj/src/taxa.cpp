#include "treegraft/taxa.hpp"

namespace treegraft {

bool valid_taxon_label(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

TaxonId TaxonTable::intern(std::string_view label) {
  auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  TaxonId id = static_cast<TaxonId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

TaxonId TaxonTable::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  return it == index_.end() ? kNoTaxon : it->second;
}

}  // namespace treegraft
