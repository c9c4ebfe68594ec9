#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ecdim {

enum class SpectrumKind { Explicit, Oscillator };

/// Discrete spectrum of a positive Hamiltonian: either an explicit sorted
/// eigenvalue list or an l-mode harmonic oscillator descriptor. Eigenvalues
/// are indexed from 0 counting multiplicity.
class SpectrumModel {
 public:
  /// Enumeration cap for multi-mode oscillator eigenvalue indices.
  static constexpr std::uint64_t kEnumerationCap = 10'000'000;

  static SpectrumModel explicit_levels(std::vector<double> levels) {
    if (levels.size() < 2)
      throw std::invalid_argument("SpectrumModel: explicit list needs at least 2 levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!std::isfinite(levels[i]))
        throw std::invalid_argument("SpectrumModel: non-finite eigenvalue");
      if (i > 0 && levels[i] < levels[i - 1])
        throw std::invalid_argument("SpectrumModel: eigenvalue list must be nondecreasing");
    }
    SpectrumModel s;
    s.kind_ = SpectrumKind::Explicit;
    s.levels_ = std::move(levels);
    return s;
  }

  static SpectrumModel oscillator(std::vector<double> omegas, double hbar = 1.0) {
    if (omegas.empty()) throw std::invalid_argument("SpectrumModel: no oscillator modes");
    if (!(hbar > 0.0)) throw std::invalid_argument("SpectrumModel: hbar must be positive");
    for (double w : omegas)
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("SpectrumModel: frequencies must be positive");
    SpectrumModel s;
    s.kind_ = SpectrumKind::Oscillator;
    s.omegas_ = std::move(omegas);
    s.hbar_ = hbar;
    return s;
  }

  static SpectrumModel single_mode(double omega = 1.0, double hbar = 1.0) {
    return oscillator({omega}, hbar);
  }

  SpectrumKind kind() const { return kind_; }
  bool is_oscillator() const { return kind_ == SpectrumKind::Oscillator; }
  bool is_single_mode() const { return is_oscillator() && omegas_.size() == 1; }

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& omegas() const { return omegas_; }
  double hbar() const { return hbar_; }
  std::size_t mode_count() const { return omegas_.size(); }

  double ground_energy() const {
    if (kind_ == SpectrumKind::Explicit) return levels_.front();
    double sum = 0.0;
    for (double w : omegas_) sum += w;
    return 0.5 * hbar_ * sum;
  }

  std::size_t ground_degeneracy() const {
    if (kind_ == SpectrumKind::Oscillator) return 1;
    const double e0 = levels_.front();
    const double tol = 1e-12 * std::max(1.0, std::fabs(e0));
    std::size_t d = 0;
    while (d < levels_.size() && levels_[d] - e0 <= tol) ++d;
    return d;
  }

  /// Largest valid eigenvalue index.
  std::uint64_t max_index() const {
    if (kind_ == SpectrumKind::Explicit) return levels_.size() - 1;
    if (is_single_mode()) return std::numeric_limits<std::int64_t>::max();
    return kEnumerationCap - 1;
  }

  /// k-th smallest eigenvalue counting multiplicity. Single-mode oscillators
  /// use the analytic ladder for any k; multi-mode indices are enumerated
  /// lazily up to kEnumerationCap.
  double eigenvalue(std::uint64_t k) const;

  /// Energy from a multiple of hbar*omega (single-mode convenience; the
  /// tables' E axis is expressed this way).
  double energy_at(double hbar_omega_multiple) const {
    if (!is_single_mode())
      throw std::invalid_argument("energy_at: defined for single-mode oscillators only");
    return hbar_omega_multiple * hbar_ * omegas_[0];
  }

  static SpectrumModel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  SpectrumModel() = default;
  SpectrumKind kind_ = SpectrumKind::Explicit;
  std::vector<double> levels_;
  std::vector<double> omegas_;
  double hbar_ = 1.0;
};

/// Sorted lazy enumeration of the l-mode oscillator spectrum. Maintains a
/// best-first frontier of occupation tuples; every tuple is generated from a
/// unique parent (increment only at or after the last nonzero coordinate),
/// so no visited set is needed.
class LevelEnumerator {
 public:
  LevelEnumerator(std::vector<double> omegas, double hbar)
      : omegas_(std::move(omegas)), hbar_(hbar) {
    std::vector<std::uint32_t> zero(omegas_.size(), 0);
    heap_.push({tuple_energy(zero), std::move(zero)});
  }

  explicit LevelEnumerator(const SpectrumModel& spec)
      : LevelEnumerator(spec.omegas(), spec.hbar()) {
    if (!spec.is_oscillator())
      throw std::invalid_argument("LevelEnumerator: oscillator spectra only");
  }

  std::uint64_t emitted() const { return emitted_; }

  /// Next eigenvalue in nondecreasing order.
  double next() {
    if (emitted_ >= SpectrumModel::kEnumerationCap)
      throw std::runtime_error("LevelEnumerator: enumeration cap exceeded");
    Node top = heap_.top();
    heap_.pop();
    ++emitted_;
    std::size_t first = 0;
    for (std::size_t i = omegas_.size(); i > 0; --i) {
      if (top.tuple[i - 1] != 0) {
        first = i - 1;
        break;
      }
    }
    for (std::size_t j = first; j < omegas_.size(); ++j) {
      Node child = top;
      child.tuple[j] += 1;
      child.energy = tuple_energy(child.tuple);
      heap_.push(std::move(child));
    }
    return top.energy;
  }

 private:
  struct Node {
    double energy;
    std::vector<std::uint32_t> tuple;
    bool operator>(const Node& o) const { return energy > o.energy; }
  };

  // energy computed directly from the occupation tuple, so enumerated values
  // agree bit-for-bit with a brute-force pass over the lattice
  double tuple_energy(const std::vector<std::uint32_t>& tuple) const {
    double e = 0.0;
    for (std::size_t i = 0; i < omegas_.size(); ++i)
      e += hbar_ * omegas_[i] * (static_cast<double>(tuple[i]) + 0.5);
    return e;
  }
  std::vector<double> omegas_;
  double hbar_;
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap_;
  std::uint64_t emitted_ = 0;
};

/// First `count` eigenvalues of a spectrum, sorted nondecreasing.
inline std::vector<double> lowest_levels(const SpectrumModel& spec, std::uint64_t count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (spec.kind() == SpectrumKind::Explicit) {
    if (count > spec.levels().size())
      throw std::out_of_range("lowest_levels: index beyond explicit list");
    out.assign(spec.levels().begin(), spec.levels().begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }
  if (spec.is_single_mode()) {
    const double hw = spec.hbar() * spec.omegas()[0];
    for (std::uint64_t k = 0; k < count; ++k)
      out.push_back((static_cast<double>(k) + 0.5) * hw);
    return out;
  }
  LevelEnumerator en(spec);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(en.next());
  return out;
}

inline double SpectrumModel::eigenvalue(std::uint64_t k) const {
  if (kind_ == SpectrumKind::Explicit) {
    if (k >= levels_.size()) throw std::out_of_range("eigenvalue: index beyond explicit list");
    return levels_[k];
  }
  if (is_single_mode()) {
    return (static_cast<double>(k) + 0.5) * hbar_ * omegas_[0];
  }
  if (k >= kEnumerationCap)
    throw std::runtime_error("eigenvalue: multi-mode index beyond enumeration cap");
  LevelEnumerator en(*this);
  double e = 0.0;
  for (std::uint64_t i = 0; i <= k; ++i) e = en.next();
  return e;
}

inline SpectrumModel SpectrumModel::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    return explicit_levels(j.at("levels").get<std::vector<double>>());
  }
  if (kind == "oscillator") {
    auto omegas = j.at("omegas").get<std::vector<double>>();
    const double hbar = j.value("hbar", 1.0);
    if (j.contains("ell") && j.at("ell").get<std::size_t>() != omegas.size())
      throw std::invalid_argument("SpectrumModel: 'ell' does not match omegas length");
    return oscillator(std::move(omegas), hbar);
  }
  throw std::invalid_argument("SpectrumModel: unknown kind '" + kind + "'");
}

inline nlohmann::json SpectrumModel::to_json() const {
  nlohmann::json j;
  if (kind_ == SpectrumKind::Explicit) {
    j["kind"] = "explicit";
    j["levels"] = levels_;
  } else {
    j["kind"] = "oscillator";
    j["ell"] = omegas_.size();
    j["omegas"] = omegas_;
    j["hbar"] = hbar_;
  }
  return j;
}

}  // namespace ecdim
