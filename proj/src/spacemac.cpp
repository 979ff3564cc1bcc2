#include "ncaudit/spacemac.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "ncaudit/kernels.hpp"

namespace ncaudit {

bool TagVector::is_zero() const noexcept {
  return std::all_of(values.begin(), values.end(), [](Symbol s) { return s == 0; });
}

TagVector& TagVector::operator+=(const TagVector& other) {
  gf::add_into(values, other.values);
  return *this;
}

SpaceMac::SpaceMac(Prf kv, std::string file_id, std::uint32_t ell)
    : prf_(std::move(kv)), file_id_(std::move(file_id)), ell_(ell), cache_(ell) {
  if (ell_ == 0) throw std::invalid_argument("SpaceMac: ell must be >= 1");
}

SpaceMac::SpaceMac(const SpaceMac& other) : prf_(other.prf_), file_id_(other.file_id_), ell_(other.ell_) {
  std::shared_lock lock(other.mu_);
  cache_ = other.cache_;
}

std::shared_ptr<const SymbolVector> SpaceMac::r_vector(std::uint32_t key_index, std::size_t length) const {
  if (key_index == 0 || key_index > ell_) throw std::out_of_range("SpaceMac: key index out of range");
  {
    std::shared_lock lock(mu_);
    const auto& cached = cache_[key_index - 1];
    if (cached && cached->size() >= length) return cached;
  }
  std::unique_lock lock(mu_);
  auto& slot = cache_[key_index - 1];
  if (!slot || slot->size() < length) {
    slot = std::make_shared<const SymbolVector>(derive_r_vector(prf_, file_id_, key_index, length));
  }
  return slot;
}

TagVector SpaceMac::mac(std::span<const Symbol> block) const {
  TagVector t(ell_);
  for (std::uint32_t j = 0; j < ell_; ++j) {
    const auto r = r_vector(j + 1, block.size());
    t[j] = kernels::dot(block, std::span(r->data(), block.size()));
  }
  return t;
}

bool SpaceMac::verify(std::span<const Symbol> block, const TagVector& tag) const {
  if (tag.size() != ell_) return false;
  bool ok = true;
  for (std::uint32_t j = 0; j < ell_; ++j) {
    const auto r = r_vector(j + 1, block.size());
    // No early exit: the multiplication count is ℓ·(n+m) for every call.
    ok &= kernels::dot(block, std::span(r->data(), block.size())) == tag[j];
  }
  return ok;
}

TagVector combine_tags(std::span<const TagEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("combine_tags: no entries");
  const std::size_t ell = entries.front().tag->size();
  TagVector out(ell);
  for (const auto& e : entries) {
    if (e.tag->size() != ell) throw std::invalid_argument("combine_tags: ell mismatch");
    gf::axpy(out.values, e.alpha, e.tag->values);
  }
  return out;
}

TagVector combine_tags(std::span<const TagVector* const> tags, std::span<const Symbol> alphas) {
  if (tags.size() != alphas.size()) throw std::invalid_argument("combine_tags: coefficient count mismatch");
  std::vector<TagEntry> entries;
  entries.reserve(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) entries.push_back({nullptr, tags[i], alphas[i]});
  return combine_tags(entries);
}

}  // namespace ncaudit
