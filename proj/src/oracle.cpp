#include "paracool/oracle.hpp"

#include <cmath>
#include <sstream>

#include "paracool/errors.hpp"

namespace paracool {

double FockVector::norm2() const {
    double s = 0.0;
    for (const auto &x : c) {
        s += std::norm(x);
    }
    return s;
}

double FockVector::occupation() const {
    double s = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        s += static_cast<double>(n) * std::norm(c[n]);
    }
    return s;
}

double FockVector::tail_mass() const {
    double s = 0.0;
    for (std::size_t n = c.size() >= 2 ? c.size() - 2 : 0; n < c.size(); ++n) {
        s += std::norm(c[n]);
    }
    return s;
}

cplx FockVector::overlap(const FockVector &chi) const {
    cplx s = 0.0;
    std::size_t n = std::min(c.size(), chi.c.size());
    for (std::size_t k = 0; k < n; ++k) {
        s += std::conj(chi.c[k]) * c[k];
    }
    return s;
}

FockVector coherent_fock(const CoherentState &xi, std::size_t N, double tail_tol) {
    if (N < 2) {
        throw InvalidParameter("truncation N must be >= 2");
    }
    FockVector v;
    v.c.assign(N, cplx(0.0));
    double r = xi.r();
    if (r == 0.0) {
        v.c[0] = 1.0;
        return v;
    }
    double lr = std::log(r);
    for (std::size_t n = 0; n < N; ++n) {
        double nn = static_cast<double>(n);
        double lmag = -0.5 * r * r + nn * lr - 0.5 * std::lgamma(nn + 1.0);
        v.c[n] = std::polar(std::exp(lmag), nn * xi.phi());
    }
    if (v.tail_mass() > tail_tol) {
        std::ostringstream msg;
        msg << "coherent state |r=" << r << "> does not fit in N=" << N << " levels";
        throw TruncationError(msg.str(), 0.0);
    }
    return v;
}

FockVector number_fock(std::size_t n, std::size_t N) {
    if (n >= N) {
        throw InvalidParameter("Fock index exceeds truncation");
    }
    FockVector v;
    v.c.assign(N, cplx(0.0));
    v.c[n] = 1.0;
    return v;
}

namespace {

// out = -i H(t) c
void apply_hamiltonian(const std::vector<cplx> &c, double f, std::vector<cplx> &out) {
    const std::size_t N = c.size();
    const cplx mi(0.0, -1.0);
    for (std::size_t n = 0; n < N; ++n) {
        double nn = static_cast<double>(n);
        cplx acc = (nn + 0.5 + f * (2.0 * nn + 1.0)) * c[n];
        if (n + 2 < N) {
            acc += f * std::sqrt((nn + 1.0) * (nn + 2.0)) * c[n + 2];
        }
        if (n >= 2) {
            acc += f * std::sqrt(nn * (nn - 1.0)) * c[n - 2];
        }
        out[n] = mi * acc;
    }
}

// out = G c with G = (z a^dagger^2 - z^* a^2) / 2
void apply_squeeze_generator(const std::vector<cplx> &c, cplx z, std::vector<cplx> &out) {
    const std::size_t N = c.size();
    for (std::size_t n = 0; n < N; ++n) {
        double nn = static_cast<double>(n);
        cplx acc = 0.0;
        if (n >= 2) {
            acc += z * std::sqrt(nn * (nn - 1.0)) * c[n - 2];
        }
        if (n + 2 < N) {
            acc -= std::conj(z) * std::sqrt((nn + 1.0) * (nn + 2.0)) * c[n + 2];
        }
        out[n] = 0.5 * acc;
    }
}

template <typename Apply>
void rk4_step(std::vector<cplx> &c, double h, Apply &&apply_at, std::vector<cplx> (&work)[5]) {
    auto &k1 = work[0], &k2 = work[1], &k3 = work[2], &k4 = work[3], &tmp = work[4];
    const std::size_t N = c.size();
    apply_at(0.0, c, k1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
    apply_at(0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
    apply_at(0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = c[i] + h * k3[i];
    apply_at(h, tmp, k4);
    for (std::size_t i = 0; i < N; ++i) c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

FockVector evolve_fock(const FockVector &v, const DriveParams &drive, double t_end, const OracleSettings &s) {
    if (!(t_end >= 0.0)) {
        throw InvalidParameter("evolve_fock needs t_end >= 0");
    }
    if (v.size() != s.N) {
        throw InvalidParameter("FockVector size does not match OracleSettings::N");
    }
    FockVector out = v;
    if (t_end == 0.0) {
        return out;
    }
    double hmax = kTwoPi / (s.steps_per_period * static_cast<double>(s.N));
    auto steps = static_cast<long>(std::ceil(t_end / hmax));
    double h = t_end / static_cast<double>(steps);
    std::vector<cplx> work[5];
    for (auto &w : work) {
        w.assign(s.N, cplx(0.0));
    }
    for (long k = 0; k < steps; ++k) {
        double t = h * static_cast<double>(k);
        rk4_step(out.c, h, [&](double dt, const std::vector<cplx> &c, std::vector<cplx> &o) {
            apply_hamiltonian(c, drive.f(t + dt), o);
        }, work);
        if (out.tail_mass() > s.tail_tol) {
            std::ostringstream msg;
            msg << "Fock tail mass " << out.tail_mass() << " exceeds " << s.tail_tol << " at t = " << t + h;
            throw TruncationError(msg.str(), t + h);
        }
    }
    return out;
}

FockVector squeeze_fock(const FockVector &v, cplx z, double tail_tol) {
    FockVector out = v;
    double scale = std::abs(z) * static_cast<double>(v.size());
    if (scale == 0.0) {
        return out;
    }
    auto steps = static_cast<long>(std::ceil(scale / 0.05));
    double h = 1.0 / static_cast<double>(steps);
    std::vector<cplx> work[5];
    for (auto &w : work) {
        w.assign(v.size(), cplx(0.0));
    }
    for (long k = 0; k < steps; ++k) {
        rk4_step(out.c, h, [&](double, const std::vector<cplx> &c, std::vector<cplx> &o) {
            apply_squeeze_generator(c, z, o);
        }, work);
        if (out.tail_mass() > tail_tol) {
            std::ostringstream msg;
            msg << "Fock tail mass exceeds " << tail_tol << " while squeezing";
            throw TruncationError(msg.str(), h * static_cast<double>(k + 1));
        }
    }
    return out;
}

}  // namespace paracool
