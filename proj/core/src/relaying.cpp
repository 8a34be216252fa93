#include "mprelay/relaying.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mprelay/errors.hpp"

namespace mprelay {
namespace {

// Re Tr(x y) for small square factors, without forming the product.
double re_trace_product(const CMat& x, const CMat& y) {
    double acc = 0.0;
    for (std::size_t p = 0; p < x.rows(); ++p) {
        for (std::size_t q = 0; q < x.cols(); ++q) acc += (x(p, q) * y(q, p)).real();
    }
    return acc;
}

double mrc_gain_from_grams(const CMat& a, const CMat& b, const PowerSetting& pw, double n0) {
    const CMat ab = matmul(a, b);
    const double tr_ab = trace(ab).real();
    const double tr_aab = re_trace_product(a, ab);
    return std::sqrt(pw.p_r / (pw.p_t * tr_aab + n0 * tr_ab));
}

struct ZfInverses {
    CMat ai;  // (G1^H G1)^-1
    CMat bi;  // (G2^H G2)^-1
};

ZfInverses zf_inverses(const ChannelRealization& ch) {
    if (ch.n_antennas() < ch.n_pairs()) {
        std::ostringstream os;
        os << "zero-forcing infeasible: N = " << ch.n_antennas() << " < K = " << ch.n_pairs();
        throw ZfInfeasibleError(os.str());
    }
    try {
        return {inv_hermitian(gram(ch.g1)), inv_hermitian(gram(ch.g2))};
    } catch (const SingularMatrixError& e) {
        throw ZfInfeasibleError(std::string("zero-forcing infeasible: ") + e.what());
    }
}

double zf_gain_from_inverses(const CMat& ai, const CMat& bi, const PowerSetting& pw, double n0) {
    const double tr_bi = trace(bi).real();
    const double tr_bi_ai = re_trace_product(bi, ai);
    return std::sqrt(pw.p_r / (pw.p_t * tr_bi + n0 * tr_bi_ai));
}

void scale_in_place(CMat& m, double factor) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= factor;
    }
}

double frob_sq(const CMat& m) {
    double acc = 0.0;
    for (const cplx& v : m.entries()) acc += std::norm(v);
    return acc;
}

void check_user_index(const ChannelRealization& ch, std::size_t k) {
    if (k >= ch.n_pairs()) {
        throw std::out_of_range("user index exceeds the number of pairs");
    }
}

}  // namespace

std::size_t prelog_divisor(RelayScheme scheme, std::size_t n_pairs) noexcept {
    return scheme == RelayScheme::NaiveOrthogonal ? n_pairs : 1;
}

const char* scheme_name(RelayScheme scheme) noexcept {
    switch (scheme) {
        case RelayScheme::MrcMrt: return "mrc";
        case RelayScheme::Zf: return "zf";
        case RelayScheme::NaiveOrthogonal: return "naive";
    }
    return "?";
}

PowerSetting::PowerSetting(double p_t_, double p_r_) : p_t(p_t_), p_r(p_r_) {
    if (!std::isfinite(p_t) || p_t <= 0.0 || !std::isfinite(p_r) || p_r <= 0.0) {
        throw std::invalid_argument("PowerSetting: powers must be positive and finite");
    }
}

double mrc_gain(const ChannelRealization& ch, const PowerSetting& pw, double n0) {
    return mrc_gain_from_grams(gram(ch.g1), gram(ch.g2), pw, n0);
}

double zf_gain(const ChannelRealization& ch, const PowerSetting& pw, double n0) {
    const ZfInverses inv = zf_inverses(ch);
    return zf_gain_from_inverses(inv.ai, inv.bi, pw, n0);
}

CMat relay_matrix(RelayScheme scheme, const ChannelRealization& ch, const PowerSetting& pw,
                  double n0) {
    switch (scheme) {
        case RelayScheme::MrcMrt: {
            CMat w = matmul(ch.g2, herm(ch.g1));
            scale_in_place(w, mrc_gain(ch, pw, n0));
            return w;
        }
        case RelayScheme::Zf: {
            const ZfInverses inv = zf_inverses(ch);
            const double a = zf_gain_from_inverses(inv.ai, inv.bi, pw, n0);
            CMat w = matmul(matmul(ch.g2, matmul(inv.bi, inv.ai)), herm(ch.g1));
            scale_in_place(w, a);
            return w;
        }
        case RelayScheme::NaiveOrthogonal:
            break;
    }
    throw std::invalid_argument("relay_matrix: the naive scheme has no relay weight matrix");
}

double power_check(const CMat& w, const CMat& g1, const PowerSetting& pw, double n0) {
    const CMat wg1 = matmul(w, g1);
    return pw.p_t * frob_sq(wg1) + n0 * frob_sq(w);
}

SinrBreakdown sinr_from_decomposition(const CMat& w, const ChannelRealization& ch,
                                      const PowerSetting& pw, double n0, std::size_t k) {
    check_user_index(ch, k);
    const std::size_t n = ch.n_antennas();
    const std::size_t pairs = ch.n_pairs();

    // v = g2k^H W, one row of length N.
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += std::conj(ch.g2(i, k)) * w(i, j);
        v[j] = acc;
    }
    // t_i = v g1i.
    std::vector<cplx> t(pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += v[j] * ch.g1(j, i);
        t[i] = acc;
    }
    double v_sq = 0.0;
    for (const cplx& x : v) v_sq += std::norm(x);
    double interference = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        if (i != k) interference += std::norm(t[i]);
    }
    return {pw.p_t * std::norm(t[k]), pw.p_t * interference, n0 * v_sq, n0};
}

PerUserSinr mrc_sinr(const ChannelRealization& ch, const PowerSetting& pw, double n0) {
    const CMat a = gram(ch.g1);
    const CMat b = gram(ch.g2);
    const double gain = mrc_gain_from_grams(a, b, pw, n0);
    const double a2 = gain * gain;
    const std::size_t pairs = ch.n_pairs();

    PerUserSinr out;
    out.values.resize(pairs);
    std::vector<cplx> t(pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
        // With u = column k of G2^H G2, the effective channel from source i
        // to destination k through W is a * t_i where t_i = (u^H A)_i, and
        // the forwarded-noise gain is u^H A u. Everything stays K x K.
        for (std::size_t i = 0; i < pairs; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < pairs; ++j) acc += std::conj(b(j, k)) * a(j, i);
            t[i] = acc;
        }
        double v_sq = 0.0;
        for (std::size_t i = 0; i < pairs; ++i) v_sq += (t[i] * b(i, k)).real();
        double interference = 0.0;
        for (std::size_t i = 0; i < pairs; ++i) {
            if (i != k) interference += std::norm(t[i]);
        }
        const double num = pw.p_t * std::norm(t[k]) / v_sq;
        const double den = pw.p_t * interference / v_sq + n0 + n0 / (a2 * v_sq);
        out.values[k] = num / den;
    }
    return out;
}

PerUserSinr zf_snr(const ChannelRealization& ch, const PowerSetting& pw, double n0) {
    const ZfInverses inv = zf_inverses(ch);
    const double gain = zf_gain_from_inverses(inv.ai, inv.bi, pw, n0);
    const double a2 = gain * gain;

    PerUserSinr out;
    out.values.resize(ch.n_pairs());
    for (std::size_t k = 0; k < ch.n_pairs(); ++k) {
        const cplx d = inv.ai(k, k);
        if (std::abs(d.imag()) >= 1e-12 * std::max(1.0, std::abs(d.real()))) {
            throw std::runtime_error("zf_snr: inverse Gram diagonal is not numerically real");
        }
        out.values[k] = a2 * pw.p_t / (a2 * d.real() * n0 + n0);
    }
    return out;
}

PerUserSinr ns_snr(const ChannelRealization& ch, const PowerSetting& pw, double n0) {
    PerUserSinr out;
    out.values.resize(ch.n_pairs());
    for (std::size_t k = 0; k < ch.n_pairs(); ++k) {
        double p1 = 0.0;
        double p2 = 0.0;
        for (std::size_t i = 0; i < ch.n_antennas(); ++i) {
            p1 += std::norm(ch.g1(i, k));
            p2 += std::norm(ch.g2(i, k));
        }
        const double snr1 = pw.p_t * p1 / n0;
        const double snr2 = pw.p_r * p2 / n0;
        out.values[k] = snr1 * snr2 / (snr1 + snr2 + 1.0);
    }
    return out;
}

double instantaneous_sum_rate(const PerUserSinr& sinr, RelayScheme scheme) {
    const double divisor =
        2.0 * static_cast<double>(prelog_divisor(scheme, sinr.values.size()));
    double sum = 0.0;
    for (double g : sinr.values) sum += std::log2(1.0 + g) / divisor;
    return sum;
}

}  // namespace mprelay
