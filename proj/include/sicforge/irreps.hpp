// Copyright 2026 The sicforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SICFORGE_IRREPS_HPP
#define SICFORGE_IRREPS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "sicforge/error.hpp"
#include "sicforge/report.hpp"

namespace sicforge {

/// Young diagram: weakly decreasing positive parts (zeros stripped). The
/// empty partition labels the trivial representation.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> parts) : parts_(std::move(parts)) {  // NOLINT(google-explicit-constructor)
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw PreconditionError("Partition: negative part");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw PreconditionError("Partition: parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  const std::vector<int>& parts() const { return parts_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  int boxes() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int part(int i) const { return i < rows() ? parts_[static_cast<std::size_t>(i)] : 0; }
  bool empty() const { return parts_.empty(); }

  /// d parts with trailing zeros, after stripping full columns of height d.
  std::vector<int> normalized(int d) const {
    if (rows() > d) throw DimensionError("Partition: more than d parts");
    std::vector<int> out(static_cast<std::size_t>(d));
    const int shift = part(d - 1);
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = part(i) - shift;
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + "]";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Young-diagram transpose.
inline Partition conjugate(const Partition& p) {
  std::vector<int> out;
  for (int c = 0; c < p.part(0); ++c) {
    int h = 0;
    while (h < p.rows() && p.part(h) > c) ++h;
    out.push_back(h);
  }
  return Partition(out);
}

/// Partition whose conjugate (column heights) is `columns`.
inline Partition from_columns(std::vector<int> columns) {
  std::sort(columns.rbegin(), columns.rend());
  return conjugate(Partition(columns));
}

namespace detail {

using u128 = unsigned __int128;

inline u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("weyl_dimension: integer overflow");
  return out;
}

}  // namespace detail

/// D_lambda = prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i), in exact
/// integer arithmetic. Throws DimensionError if p has more than d parts and
/// Error if the result does not fit in 64 bits.
inline std::uint64_t weyl_dimension(const Partition& p, int d) {
  if (d < 1) throw DimensionError("weyl_dimension: d >= 1 required");
  const auto lam = p.normalized(d);
  detail::u128 num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      detail::u128 a = static_cast<detail::u128>(lam[i] - lam[j] + j - i);
      detail::u128 b = static_cast<detail::u128>(j - i);
      const detail::u128 g1 = detail::gcd128(a, den);
      a /= g1;
      den /= g1;
      const detail::u128 g2 = detail::gcd128(num, b);
      num /= g2;
      b /= g2;
      num = detail::checked_mul(num, a);
      den = detail::checked_mul(den, b);
    }
  }
  if (num % den != 0) throw Error("weyl_dimension: non-integral dimension");
  const detail::u128 q = num / den;
  if (q > UINT64_MAX) throw Error("weyl_dimension: dimension exceeds 64 bits");
  return static_cast<std::uint64_t>(q);
}

/// Contragredient [l1 - l_d, ..., l1 - l2, 0]. Checks D_dual = D.
inline Partition dual(const Partition& p, int d) {
  const auto lam = p.normalized(d);
  std::vector<int> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = lam[0] - lam[static_cast<std::size_t>(d - 1 - i)];
  Partition q(out);
  if (weyl_dimension(q, d) != weyl_dimension(p, d)) throw Error("dual: dimension not preserved");
  return q;
}

struct IrrepRecord {
  Partition partition;
  std::uint64_t dimension = 1;
  int box_sum = 0;
  /// Sum of parts divisible by d: the representation factors through PU(d).
  bool pu_compatible = true;
  /// Column heights, i.e. the conjugate partition.
  std::vector<int> columns;
};

inline IrrepRecord make_irrep_record(const Partition& p, int d) {
  IrrepRecord r;
  r.partition = Partition(p.normalized(d));
  r.dimension = weyl_dimension(r.partition, d);
  r.box_sum = r.partition.boxes();
  r.pu_compatible = r.box_sum % d == 0;
  r.columns = conjugate(r.partition).parts();
  return r;
}

/// All SU(d) irreps with D <= bound, by depth-first search over column
/// heights m1 >= m2 >= ... in [1, d-1]. A child whose dimension exceeds the
/// bound is pruned with its subtree: appending a column never lowers D.
/// Sorted by (dimension, partition).
inline std::vector<IrrepRecord> enumerate_small_irreps(int d, std::uint64_t bound) {
  if (d < 2) throw DimensionError("enumerate_small_irreps: d >= 2 required");
  if (bound < 1) throw PreconditionError("enumerate_small_irreps: bound >= 1 required");
  std::vector<IrrepRecord> out;
  std::vector<int> cols;
  auto visit = [&](auto&& self) -> void {
    out.push_back(make_irrep_record(from_columns(cols), d));
    const int top = cols.empty() ? d - 1 : cols.back();
    for (int m = 1; m <= top; ++m) {
      cols.push_back(m);
      if (weyl_dimension(from_columns(cols), d) <= bound) self(self);
      cols.pop_back();
    }
  };
  visit(visit);
  std::sort(out.begin(), out.end(), [](const IrrepRecord& a, const IrrepRecord& b) {
    return a.dimension != b.dimension ? a.dimension < b.dimension : a.partition < b.partition;
  });
  return out;
}

/// Heights m of single columns [m]^C, 1 <= m <= d-1, with C(d, m) <= bound.
inline std::vector<int> one_column_survivors(int d, std::uint64_t bound) {
  std::vector<int> out;
  for (const auto& r : enumerate_small_irreps(d, bound))
    if (r.columns.size() == 1) out.push_back(r.columns.front());
  std::sort(out.begin(), out.end());
  return out;
}

/// Adjoint representation [d-1, 1]^C.
inline Partition adjoint_partition(int d) { return from_columns({d - 1, 1}); }

/// The trivial and adjoint representations are the only PU(d) irreps of
/// dimension <= d^2 - 1.
inline CheckReport certify_adjoint_uniqueness(int d) {
  if (d < 2) throw DimensionError("certify_adjoint_uniqueness: d >= 2 required");
  CheckReport r("certify_adjoint_uniqueness",
                "the only nontrivial PU(d) irrep of dimension <= d^2 - 1 is the adjoint [d-1,1]^C");
  const std::uint64_t bound = static_cast<std::uint64_t>(d) * d - 1;
  const auto all = enumerate_small_irreps(d, bound);
  std::vector<Partition> pu;
  for (const auto& rec : all)
    if (rec.pu_compatible) pu.push_back(rec.partition);
  const Partition adj = Partition(adjoint_partition(d).normalized(d));
  const std::uint64_t dim_adj = weyl_dimension(adj, d);
  std::vector<Partition> expected{Partition(), adj};
  std::sort(pu.begin(), pu.end());
  std::sort(expected.begin(), expected.end());
  r.values["enumerated"] = static_cast<double>(all.size());
  r.values["pu_compatible"] = static_cast<double>(pu.size());
  r.values["adjoint_dimension"] = static_cast<double>(dim_adj);
  r.verdicts["adjoint_dimension"] = dim_adj == bound;
  r.verdicts["only_trivial_and_adjoint"] = pu == expected;
  for (const auto& p : pu) r.note("PU(d)-compatible: " + p.to_string());
  if (d == 2) r.note("d = 2: the two-column candidates [1,1]^C, [d-1,1]^C and the adjoint coincide");
  r.pass = r.verdict("adjoint_dimension") && r.verdict("only_trivial_and_adjoint");
  return r;
}

}  // namespace sicforge

#endif  // SICFORGE_IRREPS_HPP
