#include "indist/symgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "indist/errors.hpp"

namespace indist {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw ArgumentError("image array is not a permutation");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_rank(int n, std::uint64_t index) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> images;
  images.reserve(n);
  for (int i = n; i >= 1; --i) {
    auto block = static_cast<std::uint64_t>(factorial(i - 1));
    auto pick = static_cast<std::size_t>(index / block);
    if (pick >= pool.size()) throw ArgumentError("rank out of range");
    index %= block;
    images.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::uint64_t Permutation::rank() const {
  // Lehmer code.
  std::uint64_t r = 0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) {
      if (images_[j] < images_[i]) ++smaller;
    }
    r += static_cast<std::uint64_t>(smaller) * static_cast<std::uint64_t>(factorial(n - 1 - i));
  }
  return r;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ArgumentError("composing permutations of different degree");
  std::vector<int> images(a.images_.size());
  for (int i = 0; i < a.size(); ++i) images[i] = a.images_[b.images_[i]];
  return Permutation(std::move(images));
}

int CycleType::degree() const {
  int n = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) n += static_cast<int>(k + 1) * counts[k];
  return n;
}

double CycleType::class_size() const {
  double denom = 1.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    denom *= std::pow(static_cast<double>(k + 1), counts[k]) * factorial(counts[k]);
  }
  return factorial(degree()) / denom;
}

CycleType cycle_type(const Permutation& p) {
  CycleType ct{std::vector<int>(p.size(), 0)};
  for (const auto& c : p.cycles()) ++ct.counts[c.size() - 1];
  return ct;
}

namespace {

void partitions(int remaining, int max_part, std::vector<int>& counts,
                std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back(CycleType{counts});
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++counts[part - 1];
    partitions(remaining - part, part, counts, out);
    --counts[part - 1];
  }
}

}  // namespace

std::vector<CycleType> enumerate_cycle_types(int n) {
  if (n < 0) throw ArgumentError("negative degree");
  std::vector<CycleType> out;
  std::vector<int> counts(n, 0);
  partitions(n, n, counts, out);
  // Identity type (all 1-cycles) comes out last from the recursion above.
  std::reverse(out.begin(), out.end());
  return out;
}

double factorial(int n) {
  if (n < 0) throw ArgumentError("factorial of a negative number");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<Permutation> enumerate_permutations(int n) {
  if (n > kMaxEnumeratedN) {
    throw SizeLimitError("cannot enumerate S_" + std::to_string(n) + " (limit " +
                         std::to_string(kMaxEnumeratedN) + ")");
  }
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(factorial(n)));
  for_each_permutation(n, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
  if (n > kMaxEnumeratedN) {
    throw SizeLimitError("cannot enumerate S_" + std::to_string(n));
  }
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  do {
    visit(Permutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

double multiplicity(const Occupation& n) {
  double mu = 1.0;
  for (int nk : n) {
    if (nk < 0) throw ArgumentError("negative occupation number");
    mu *= factorial(nk);
  }
  return mu;
}

ModeList mode_list(const Occupation& n) {
  ModeList modes;
  for (std::size_t k = 0; k < n.size(); ++k) {
    if (n[k] < 0) throw ArgumentError("negative occupation number");
    modes.insert(modes.end(), n[k], static_cast<int>(k));
  }
  return modes;
}

ModeSubgroup::ModeSubgroup(ModeList modes) : modes_(std::move(modes)) {
  if (!std::is_sorted(modes_.begin(), modes_.end())) {
    throw ArgumentError("mode list must be ascending");
  }
}

double ModeSubgroup::order() const {
  double mu = 1.0;
  std::size_t i = 0;
  while (i < modes_.size()) {
    std::size_t j = i;
    while (j < modes_.size() && modes_[j] == modes_[i]) ++j;
    mu *= factorial(static_cast<int>(j - i));
    i = j;
  }
  return mu;
}

bool ModeSubgroup::contains(const Permutation& p) const {
  if (p.size() != degree()) return false;
  for (int i = 0; i < degree(); ++i) {
    if (modes_[p(i)] != modes_[i]) return false;
  }
  return true;
}

std::vector<Permutation> ModeSubgroup::elements() const {
  // Lexicographic order of image arrays equals the lexicographic order of
  // the tuple of per-block arrangements, so enumerate block by block.
  std::vector<std::pair<int, int>> blocks;
  std::size_t i = 0;
  while (i < modes_.size()) {
    std::size_t j = i;
    while (j < modes_.size() && modes_[j] == modes_[i]) ++j;
    blocks.emplace_back(static_cast<int>(i), static_cast<int>(j));
    i = j;
  }
  std::vector<Permutation> out;
  std::vector<int> images(modes_.size());
  std::iota(images.begin(), images.end(), 0);
  std::function<void(std::size_t)> recurse = [&](std::size_t b) {
    if (b == blocks.size()) {
      out.emplace_back(images);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(images.begin() + lo, images.begin() + hi);
    do {
      recurse(b + 1);
    } while (std::next_permutation(images.begin() + lo, images.begin() + hi));
  };
  recurse(0);
  return out;
}

}  // namespace indist
