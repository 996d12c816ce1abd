#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include "dobinski/dobinski_series.hpp"
#include "dobinski/error.hpp"
#include "dobinski/polynomial.hpp"
#include "dobinski/real.hpp"
#include "dobinski/tail_bound.hpp"

namespace dobinski {

/// One point mass of a comb. Locations and unscaled weights x^k/k! are
/// exact; the physical weight is raw_weight / s.
struct CombAtom {
  mpq_class location;
  mpq_class raw_weight;
  std::vector<std::size_t> indices;  // the k values merged into this atom
};

/// Truncated Dirac comb sum_{k<=K} delta(y - P(k)) / D(k).
class DiracComb {
 public:
  DiracComb(SeriesSpec spec, std::vector<CombAtom> atoms, std::size_t truncation, mpq_class raw_mass_defect, long bits)
      : spec_(std::move(spec)),
        atoms_(std::move(atoms)),
        truncation_(truncation),
        raw_mass_defect_(std::move(raw_mass_defect)),
        bits_(bits) {}

  const SeriesSpec& spec() const { return spec_; }
  const std::vector<CombAtom>& atoms() const { return atoms_; }
  /// Largest k retained.
  std::size_t truncation() const { return truncation_; }
  long bits() const { return bits_; }

  Real location(std::size_t i) const { return Real(atoms_[i].location, bits_); }
  Real weight(std::size_t i) const { return Real(atoms_[i].raw_weight, bits_) * spec_.inverse_scale(bits_); }
  /// Upper bound on the omitted mass sum_{k>K} 1/D(k).
  Real mass_defect() const { return inflate(Real::upper(raw_mass_defect_, bits_) * spec_.inverse_scale(bits_)); }

  Real total_mass() const {
    mpq_class raw = 0;
    for (const auto& a : atoms_) raw += a.raw_weight;
    return Real(raw, bits_) * spec_.inverse_scale(bits_);
  }

  /// Combines atoms sharing an exact location; result is sorted by location.
  DiracComb merged() const {
    std::map<mpq_class, CombAtom> by_location;
    for (const auto& a : atoms_) {
      auto [it, inserted] = by_location.try_emplace(a.location, CombAtom{a.location, 0, {}});
      it->second.raw_weight += a.raw_weight;
      it->second.indices.insert(it->second.indices.end(), a.indices.begin(), a.indices.end());
    }
    std::vector<CombAtom> out;
    out.reserve(by_location.size());
    for (auto& [loc, atom] : by_location) out.push_back(std::move(atom));
    return DiracComb(spec_, std::move(out), truncation_, raw_mass_defect_, bits_);
  }

 private:
  SeriesSpec spec_;
  std::vector<CombAtom> atoms_;
  std::size_t truncation_;
  mpq_class raw_mass_defect_;
  long bits_;
};

struct CombOptions {
  long bits = kDefaultBits;
  bool merge = true;
  std::size_t max_atoms = 100000;
};

/// Truncates at the smallest K whose tail-mass bound is <= mass_tol.
inline DiracComb build_comb(const SeriesSpec& spec, double mass_tol, const CombOptions& opt = {}) {
  if (!(mass_tol > 0.0)) fail(ErrorKind::invalid_argument, "mass_tol must be positive");
  spec.validate();
  const PowerTailMajorant mass(spec.p, 0, spec.x);
  const Real inv = spec.inverse_scale(opt.bits);
  const Real tol(mass_tol, opt.bits);

  std::vector<CombAtom> atoms;
  mpq_class w = 1;
  for (std::size_t k = 0;; ++k) {
    if (k >= opt.max_atoms) detail::cap_exceeded(opt.max_atoms);
    atoms.push_back(CombAtom{spec.p(mpq_class(static_cast<unsigned long>(k))), w, {k}});
    w = w * spec.x / static_cast<unsigned long>(k + 1);
    if (!mass.geometric_from(k + 1)) continue;
    const mpq_class defect = mass.geometric_bound(k + 1, w);
    if (inflate(Real::upper(defect, opt.bits) * inv) <= tol) {
      DiracComb comb(spec, std::move(atoms), k, defect, opt.bits);
      return opt.merge ? comb.merged() : comb;
    }
  }
}

/// n-th moment of the comb, with the omitted tail sum_{k>K} |P(k)|^n / D(k)
/// bounded by the same machinery as the Dobinski series.
inline EvalResult moment(const DiracComb& comb, std::size_t n) {
  mpq_class raw = 0;
  for (const auto& a : comb.atoms()) raw += pow(a.location, n) * a.raw_weight;
  const auto& spec = comb.spec();
  const mpq_class tail = PowerTailMajorant(spec.p, n, spec.x).tail_from(comb.truncation() + 1);
  const Real inv = spec.inverse_scale(comb.bits());
  return EvalResult{Real(raw, comb.bits()) * inv, inflate(Real::upper(tail, comb.bits()) * inv),
                    comb.truncation() + 1, comb.bits()};
}

struct DistributionReport {
  bool passed = false;
  bool all_positive = false;
  Real total_mass;
  Real mass_defect;
  Real measured_defect;  // 1 - total_mass
};

/// Positivity and normalization: passes iff every weight is positive and
/// 1 lies in [mass - tol, mass + mass_defect + tol].
inline DistributionReport check_distribution(const DiracComb& comb, double tol = 1e-12) {
  DistributionReport r;
  r.all_positive = std::all_of(comb.atoms().begin(), comb.atoms().end(),
                               [](const CombAtom& a) { return a.raw_weight > 0; }) &&
                   (comb.spec().is_auto() || comb.spec().explicit_scale->sign() > 0);
  r.total_mass = comb.total_mass();
  r.mass_defect = comb.mass_defect();
  const Real one(1L, comb.bits());
  const Real eps(tol, comb.bits());
  r.measured_defect = one - r.total_mass;
  r.passed = r.all_positive && r.total_mass <= one + eps && r.total_mass + r.mass_defect >= one - eps;
  return r;
}

enum class MomentProblem { hamburger, stieltjes, hausdorff };

inline std::string_view to_string(MomentProblem m) {
  switch (m) {
    case MomentProblem::hamburger: return "Hamburger";
    case MomentProblem::stieltjes: return "Stieltjes";
    case MomentProblem::hausdorff: return "Hausdorff";
  }
  return "unknown";
}

/// Support class of the comb with locations {P(k) : k >= 0}: bounded
/// (constant P), inside [0, inf), or unrestricted.
inline MomentProblem classify(const PolynomialQ& p) {
  if (p.is_constant()) return MomentProblem::hausdorff;
  if (p.leading() < 0) return MomentProblem::hamburger;
  const std::size_t k_stop = monotone_from(p);
  for (std::size_t k = 0; k <= k_stop; ++k)
    if (p(mpq_class(static_cast<unsigned long>(k))) < 0) return MomentProblem::hamburger;
  return MomentProblem::stieltjes;
}

struct CombRow {
  Real location;
  Real weight;
};

/// Atoms with y_min <= location <= y_max, sorted by location.
inline std::vector<CombRow> export_comb(const DiracComb& comb, const mpq_class& y_min, const mpq_class& y_max) {
  if (!(y_min < y_max)) fail(ErrorKind::invalid_argument, "empty or invalid range: y_min must be < y_max");
  const DiracComb sorted = comb.merged();
  std::vector<CombRow> rows;
  for (std::size_t i = 0; i < sorted.atoms().size(); ++i) {
    const auto& loc = sorted.atoms()[i].location;
    if (loc < y_min || loc > y_max) continue;
    rows.push_back(CombRow{sorted.location(i), sorted.weight(i)});
  }
  return rows;
}

inline std::vector<CombRow> export_comb(const DiracComb& comb) {
  const DiracComb sorted = comb.merged();
  std::vector<CombRow> rows;
  for (std::size_t i = 0; i < sorted.atoms().size(); ++i) rows.push_back(CombRow{sorted.location(i), sorted.weight(i)});
  return rows;
}

/// CSV with header `location,weight`, decimals rounded to nearest at the
/// digit count matching the working precision.
inline void write_comb_csv(std::ostream& os, const std::vector<CombRow>& rows) {
  os << "location,weight\n";
  for (const auto& r : rows) os << r.location.to_string() << ',' << r.weight.to_string() << '\n';
}

}  // namespace dobinski
