#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "photonlab/mode_space.hpp"
#include "photonlab/types.hpp"

/// Exact sparse occupation-number algebra over a finite set of modes.
namespace photonlab::fock {

class ModeSet {
public:
    /// metric_sign entries must be +1 or -1; one per mode.
    ModeSet(std::vector<int> metric_sign, int n_max = 12);
    static ModeSet transverse(std::size_t mode_count, int n_max = 12);

    std::size_t mode_count() const { return sign_.size(); }
    int metric_sign(std::size_t m) const { return sign_.at(m); }
    int n_max() const { return n_max_; }

    friend bool operator==(const ModeSet&, const ModeSet&) = default;

private:
    std::vector<int> sign_;
    int n_max_;
};

using Occupation = std::vector<int>;

class FockVector {
public:
    explicit FockVector(ModeSet modes) : modes_(std::move(modes)) {}

    const ModeSet& modes() const { return modes_; }
    const std::map<Occupation, cplx>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Adds amp to the amplitude of |occ>; entries that cancel to zero are erased.
    void add(const Occupation& occ, cplx amp);
    FockVector& operator*=(cplx factor);

private:
    ModeSet modes_;
    std::map<Occupation, cplx> terms_;
};

FockVector operator+(const FockVector& a, const FockVector& b);
FockVector operator-(const FockVector& a, const FockVector& b);

FockVector vacuum(const ModeSet& ms);

/// a_m^dagger: |..n..> -> sqrt(n+1) |..n+1..>. Throws "truncation overflow"
/// when an occupation would exceed n_max.
FockVector apply_create(const FockVector& v, std::size_t m);

/// a_m: |..n..> -> sqrt(n) |..n-1..>; a|0> drops out.
FockVector apply_annihilate(const FockVector& v, std::size_t m);

/// (a_m^dagger)^n |0> / sqrt(n!).
FockVector n_photon_state(const ModeSet& ms, std::size_t m, int n);

/// Positive-definite product sum conj(u_n) v_n.
cplx inner_product(const FockVector& u, const FockVector& v);

/// Indefinite form sum conj(u_n) v_n prod_m metric_sign(m)^{n_m}.
cplx metric_inner_product(const FockVector& u, const FockVector& v);

/// <v| a_m a_m^dagger - a_m^dagger a_m |v> with metric_sign(m) applied.
/// Requires <v|v> = 1 within 1e-12 ("unnormalized" otherwise).
cplx commutator_expectation(const FockVector& v, std::size_t m);

/// <v| [a_m, a_n^dagger] |v>, metric_sign(m) applied when m == n. No
/// normalization requirement.
cplx mixed_commutator_expectation(const FockVector& v, std::size_t m, std::size_t n);

/// <v| [a_m, a_n] |v> and <v| [a_m^dagger, a_n^dagger] |v>.
cplx annihilator_commutator_expectation(const FockVector& v, std::size_t m, std::size_t n);
cplx creator_commutator_expectation(const FockVector& v, std::size_t m, std::size_t n);

double number_expectation(const FockVector& v, std::size_t m);

/// A scalar amplitude on a wavevector grid: the longitudinal or scalar
/// potential mode content.
struct ScalarSpectrum {
    mode_space::WaveVectorGrid grid;
    std::vector<cplx> c;
};

/// Mode-wise contraction sum integral dk/(2pi)^3 |c|^2.
double mode_contraction(const ScalarSpectrum& s);

/// |T(c_par) - T(c_scalar)|; vanishes when the Lorenz constraint ties the
/// scalar amplitude to the longitudinal one.
double longitudinal_cancellation_residual(const ScalarSpectrum& c_par, const ScalarSpectrum& c_scalar);

}  // namespace photonlab::fock
