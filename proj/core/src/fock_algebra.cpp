#include "photonlab/fock_algebra.hpp"

#include <cmath>

#include "photonlab/summation.hpp"

namespace photonlab::fock {

ModeSet::ModeSet(std::vector<int> metric_sign, int n_max) : sign_(std::move(metric_sign)), n_max_(n_max) {
    if (sign_.empty()) throw Error("mode set: mode_count must be at least 1");
    if (n_max_ < 1) throw Error("mode set: n_max must be at least 1");
    for (int s : sign_)
        if (s != 1 && s != -1) throw Error("mode set: metric sign must be +1 or -1");
}

ModeSet ModeSet::transverse(std::size_t mode_count, int n_max) {
    return ModeSet(std::vector<int>(mode_count, 1), n_max);
}

void FockVector::add(const Occupation& occ, cplx amp) {
    if (occ.size() != modes_.mode_count()) throw Error("fock vector: occupation length mismatch");
    for (int n : occ)
        if (n < 0 || n > modes_.n_max()) throw Error("truncation overflow");
    if (amp == cplx{}) return;
    auto [it, inserted] = terms_.try_emplace(occ, amp);
    if (!inserted) {
        it->second += amp;
        if (it->second == cplx{}) terms_.erase(it);
    }
}

FockVector& FockVector::operator*=(cplx factor) {
    if (factor == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [occ, amp] : terms_) amp *= factor;
    return *this;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
    if (!(a.modes() == b.modes())) throw Error("fock vector: mode set mismatch");
    FockVector out = a;
    for (const auto& [occ, amp] : b.terms()) out.add(occ, amp);
    return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
    if (!(a.modes() == b.modes())) throw Error("fock vector: mode set mismatch");
    FockVector out = a;
    for (const auto& [occ, amp] : b.terms()) out.add(occ, -amp);
    return out;
}

FockVector vacuum(const ModeSet& ms) {
    FockVector v(ms);
    v.add(Occupation(ms.mode_count(), 0), 1.0);
    return v;
}

namespace {

void check_mode(const FockVector& v, std::size_t m) {
    if (m >= v.modes().mode_count()) throw Error("fock: mode index out of range");
}

cplx dot(const FockVector& u, const FockVector& v, bool with_metric) {
    if (!(u.modes() == v.modes())) throw Error("fock vector: mode set mismatch");
    std::vector<cplx> parts;
    parts.reserve(u.terms().size());
    for (const auto& [occ, amp] : u.terms()) {
        const auto it = v.terms().find(occ);
        if (it == v.terms().end()) continue;
        cplx term = std::conj(amp) * it->second;
        if (with_metric) {
            for (std::size_t m = 0; m < occ.size(); ++m)
                if (u.modes().metric_sign(m) < 0 && (occ[m] % 2) == 1) term = -term;
        }
        parts.push_back(term);
    }
    return pairwise_sum(parts);
}

}  // namespace

FockVector apply_create(const FockVector& v, std::size_t m) {
    check_mode(v, m);
    FockVector out(v.modes());
    for (const auto& [occ, amp] : v.terms()) {
        if (occ[m] + 1 > v.modes().n_max()) throw Error("truncation overflow");
        Occupation next = occ;
        next[m] += 1;
        out.add(next, amp * std::sqrt(static_cast<double>(next[m])));
    }
    return out;
}

FockVector apply_annihilate(const FockVector& v, std::size_t m) {
    check_mode(v, m);
    FockVector out(v.modes());
    for (const auto& [occ, amp] : v.terms()) {
        if (occ[m] == 0) continue;
        Occupation next = occ;
        next[m] -= 1;
        out.add(next, amp * std::sqrt(static_cast<double>(occ[m])));
    }
    return out;
}

FockVector n_photon_state(const ModeSet& ms, std::size_t m, int n) {
    if (n < 0 || n > ms.n_max()) throw Error("n-photon state: n exceeds truncation");
    FockVector v = vacuum(ms);
    double factorial = 1.0;
    for (int j = 1; j <= n; ++j) {
        v = apply_create(v, m);
        factorial *= j;
    }
    v *= 1.0 / std::sqrt(factorial);
    return v;
}

cplx inner_product(const FockVector& u, const FockVector& v) { return dot(u, v, false); }

cplx metric_inner_product(const FockVector& u, const FockVector& v) { return dot(u, v, true); }

cplx mixed_commutator_expectation(const FockVector& v, std::size_t m, std::size_t n) {
    const FockVector forward = apply_annihilate(apply_create(v, n), m);
    const FockVector backward = apply_create(apply_annihilate(v, m), n);
    const cplx value = inner_product(v, forward) - inner_product(v, backward);
    return m == n ? static_cast<double>(v.modes().metric_sign(m)) * value : value;
}

cplx commutator_expectation(const FockVector& v, std::size_t m) {
    check_mode(v, m);
    if (std::abs(inner_product(v, v) - 1.0) > 1e-12) throw Error("commutator expectation: unnormalized");
    return mixed_commutator_expectation(v, m, m);
}

cplx annihilator_commutator_expectation(const FockVector& v, std::size_t m, std::size_t n) {
    const FockVector mn = apply_annihilate(apply_annihilate(v, n), m);
    const FockVector nm = apply_annihilate(apply_annihilate(v, m), n);
    return inner_product(v, mn) - inner_product(v, nm);
}

cplx creator_commutator_expectation(const FockVector& v, std::size_t m, std::size_t n) {
    const FockVector mn = apply_create(apply_create(v, n), m);
    const FockVector nm = apply_create(apply_create(v, m), n);
    return inner_product(v, mn) - inner_product(v, nm);
}

double number_expectation(const FockVector& v, std::size_t m) {
    return inner_product(v, apply_create(apply_annihilate(v, m), m)).real();
}

double mode_contraction(const ScalarSpectrum& s) {
    if (s.c.size() != s.grid.size()) throw Error("scalar spectrum: size mismatch");
    return s.grid.cell_weight() * pairwise_sum(s.c.size(), [&](std::size_t f) { return std::norm(s.c[f]); });
}

double longitudinal_cancellation_residual(const ScalarSpectrum& c_par, const ScalarSpectrum& c_scalar) {
    if (!(c_par.grid == c_scalar.grid)) throw Error("longitudinal cancellation: grid mismatch");
    return std::abs(mode_contraction(c_par) - mode_contraction(c_scalar));
}

}  // namespace photonlab::fock
