#include "torsym/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "torsym/errors.hpp"
#include "torsym/quadrature.hpp"

namespace torsym {

namespace {

constexpr int kEnvelopeGrid = 128;
constexpr double kEnvelopeSafety = 1.0 + 1e-6;

std::string fmt_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Wrapped Cauchy pieces, one coordinate.
inline double wc_den(double beta, double t) { return 1.0 + beta * beta - 2.0 * beta * std::cos(t); }

}  // namespace

BaseModel::BaseModel(ModelKind kind, int dim, std::vector<double> params)
    : kind_(kind), dim_(dim), params_(std::move(params)) {}

BaseModel BaseModel::independent_wrapped_cauchy(std::vector<double> beta) {
    if (beta.empty()) throw ModelError("IndepWrappedCauchy: need at least one concentration");
    for (double b : beta) {
        if (!(b > 0.0 && b < 1.0)) {
            throw ModelError("IndepWrappedCauchy: concentrations must lie in (0,1), got " + fmt_number(b));
        }
    }
    const int d = static_cast<int>(beta.size());
    BaseModel m(ModelKind::IndepWrappedCauchy, d, std::move(beta));
    m.prepare();
    return m;
}

BaseModel BaseModel::sine(double k1, double k2, double rho, bool allow_multimodal) {
    if (!(k1 >= 0.0) || !(k2 >= 0.0) || !std::isfinite(k1) || !std::isfinite(k2)) {
        throw ModelError("SineModel: k1 and k2 must be finite and >= 0");
    }
    if (!std::isfinite(rho)) throw ModelError("SineModel: rho must be finite");
    if (rho * rho > k1 * k2) {
        if (!allow_multimodal) {
            throw ModelError("SineModel: rho^2 > k1 k2 makes the density bimodal; set allow_multimodal to override");
        }
        std::cerr << "warning: SineModel with rho^2 > k1 k2 is not unimodal; the tests' assumptions do not hold\n";
    }
    BaseModel m(ModelKind::SineModel, 2, {k1, k2, rho});
    m.prepare();
    return m;
}

BaseModel BaseModel::bivariate_wrapped_cauchy(double xi1, double xi2, double rho) {
    if (!(xi1 >= 0.0 && xi1 < 1.0) || !(xi2 >= 0.0 && xi2 < 1.0)) {
        throw ModelError("BivariateWrappedCauchy: xi1, xi2 must lie in [0,1)");
    }
    if (!(rho > -1.0 && rho < 1.0)) throw ModelError("BivariateWrappedCauchy: rho must lie in (-1,1)");
    BaseModel m(ModelKind::BivariateWrappedCauchy, 2, {xi1, xi2, rho});
    m.prepare();
    return m;
}

BaseModel BaseModel::uniform(int dim) {
    if (dim < 1) throw ModelError("UniformTorus: dimension must be >= 1");
    BaseModel m(ModelKind::UniformTorus, dim, {});
    m.prepare();
    return m;
}

void BaseModel::prepare() {
    switch (kind_) {
        case ModelKind::IndepWrappedCauchy: {
            double sup = 1.0;
            for (double b : params_) sup *= (1.0 + b) / (kTwoPi * (1.0 - b));
            sup_density_ = sup;
            return;
        }
        case ModelKind::UniformTorus:
            sup_density_ = std::pow(kTwoPi, -dim_);
            return;
        case ModelKind::SineModel: {
            const double k1 = params_[0], k2 = params_[1], rho = params_[2];
            const double shift = k1 + k2 + std::fabs(rho);
            const double z = periodic_integrate(
                [&](std::span<const double> t) {
                    return std::exp(k1 * std::cos(t[0]) + k2 * std::cos(t[1]) +
                                    rho * std::sin(t[0]) * std::sin(t[1]) - shift);
                },
                2, default_nodes(2));
            log_norm_ = std::log(z) + shift;
            break;
        }
        case ModelKind::BivariateWrappedCauchy: {
            const double x1 = params_[0], x2 = params_[1], r = params_[2];
            const double ar = std::fabs(r);
            const double r2 = 1.0 + r * r;
            const double a1 = 1.0 + x1 * x1, a2 = 1.0 + x2 * x2;
            const double c = (1.0 - r * r) * (1.0 - x1 * x1) * (1.0 - x2 * x2) / (4.0 * kPi * kPi);
            const double c0 = r2 * a1 * a2 - 8.0 * ar * x1 * x2;
            const double c1 = 2.0 * r2 * x1 * a2 - 4.0 * ar * a1 * x2;
            const double c2 = 2.0 * r2 * a1 * x2 - 4.0 * ar * x1 * a2;
            const double c3 = -4.0 * r2 * x1 * x2 + 2.0 * ar * a1 * a2;
            const double c4 = 2.0 * r * (1.0 - x1 * x1) * (1.0 - x2 * x2);
            bwc_c_ = {c, c0, c1, c2, c3, c4};
            break;
        }
    }

    // Envelope height: grid search then a shrinking pattern search around the
    // best node.
    std::vector<double> best(dim_, 0.0), t(dim_);
    double best_val = -1.0;
    const double h = kTwoPi / kEnvelopeGrid;
    std::size_t total = 1;
    for (int k = 0; k < dim_; ++k) total *= kEnvelopeGrid;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int k = dim_ - 1; k >= 0; --k) {
            t[k] = -kPi + h * static_cast<double>(rest % kEnvelopeGrid);
            rest /= kEnvelopeGrid;
        }
        const double v = density(t);
        if (v > best_val) {
            best_val = v;
            best = t;
        }
    }
    for (double step = h; step > 1e-10; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int k = 0; k < dim_; ++k) {
                for (double dir : {-1.0, 1.0}) {
                    t = best;
                    t[k] += dir * step;
                    const double v = density(t);
                    if (v > best_val) {
                        best_val = v;
                        best = t;
                        improved = true;
                    }
                }
            }
        }
    }
    sup_density_ = best_val;
}

void BaseModel::check_dim(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != dim_) {
        throw DomainError("angle vector has length " + std::to_string(theta.size()) + ", model dimension is " +
                          std::to_string(dim_));
    }
}

std::string BaseModel::label() const {
    std::string prefix;
    switch (kind_) {
        case ModelKind::IndepWrappedCauchy: prefix = "I"; break;
        case ModelKind::SineModel: prefix = "S"; break;
        case ModelKind::BivariateWrappedCauchy: prefix = "BWC"; break;
        case ModelKind::UniformTorus: return "U_" + std::to_string(dim_);
    }
    std::string out = prefix + "_{";
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) out += ";";
        out += fmt_number(params_[i]);
    }
    return out + "}";
}

double BaseModel::bwc_denominator(double t1, double t2) const {
    const double c1 = std::cos(t1), c2 = std::cos(t2);
    return bwc_c_[1] - bwc_c_[2] * c1 - bwc_c_[3] * c2 - bwc_c_[4] * c1 * c2 -
           bwc_c_[5] * std::sin(t1) * std::sin(t2);
}

double BaseModel::density(std::span<const double> theta) const {
    check_dim(theta);
    switch (kind_) {
        case ModelKind::IndepWrappedCauchy: {
            double f = 1.0;
            for (int j = 0; j < dim_; ++j) {
                const double b = params_[j];
                f *= (1.0 - b * b) / (kTwoPi * wc_den(b, theta[j]));
            }
            return f;
        }
        case ModelKind::SineModel:
            return std::exp(log_density(theta));
        case ModelKind::BivariateWrappedCauchy:
            return bwc_c_[0] / bwc_denominator(theta[0], theta[1]);
        case ModelKind::UniformTorus:
            return std::pow(kTwoPi, -dim_);
    }
    return 0.0;
}

double BaseModel::log_density(std::span<const double> theta) const {
    check_dim(theta);
    if (kind_ == ModelKind::SineModel) {
        return params_[0] * std::cos(theta[0]) + params_[1] * std::cos(theta[1]) +
               params_[2] * std::sin(theta[0]) * std::sin(theta[1]) - log_norm_;
    }
    return std::log(density(theta));
}

std::vector<double> BaseModel::score(std::span<const double> theta) const {
    std::vector<double> out(dim_);
    score_into(theta, out);
    return out;
}

void BaseModel::score_into(std::span<const double> theta, std::span<double> out) const {
    check_dim(theta);
    switch (kind_) {
        case ModelKind::IndepWrappedCauchy:
            for (int j = 0; j < dim_; ++j) {
                const double b = params_[j];
                out[j] = 2.0 * b * std::sin(theta[j]) / wc_den(b, theta[j]);
            }
            return;
        case ModelKind::SineModel: {
            const double s1 = std::sin(theta[0]), c1 = std::cos(theta[0]);
            const double s2 = std::sin(theta[1]), c2 = std::cos(theta[1]);
            out[0] = params_[0] * s1 - params_[2] * c1 * s2;
            out[1] = params_[1] * s2 - params_[2] * s1 * c2;
            return;
        }
        case ModelKind::BivariateWrappedCauchy: {
            // f = c / D, so phi_j = (d_j D) / D.
            const double s1 = std::sin(theta[0]), c1 = std::cos(theta[0]);
            const double s2 = std::sin(theta[1]), c2 = std::cos(theta[1]);
            const double d = bwc_denominator(theta[0], theta[1]);
            const double d1 = bwc_c_[2] * s1 + bwc_c_[4] * s1 * c2 - bwc_c_[5] * c1 * s2;
            const double d2 = bwc_c_[3] * s2 + bwc_c_[4] * c1 * s2 - bwc_c_[5] * s1 * c2;
            out[0] = d1 / d;
            out[1] = d2 / d;
            return;
        }
        case ModelKind::UniformTorus:
            std::fill(out.begin(), out.end(), 0.0);
            return;
    }
}

Matrix BaseModel::score_jacobian(std::span<const double> theta) const {
    std::vector<double> buf(static_cast<std::size_t>(dim_) * dim_);
    score_jacobian_into(theta, buf);
    return Matrix(dim_, dim_, std::move(buf));
}

void BaseModel::score_jacobian_into(std::span<const double> theta, std::span<double> out) const {
    check_dim(theta);
    std::fill(out.begin(), out.end(), 0.0);
    switch (kind_) {
        case ModelKind::IndepWrappedCauchy:
            for (int j = 0; j < dim_; ++j) {
                const double b = params_[j];
                const double den = wc_den(b, theta[j]);
                out[j * dim_ + j] = 2.0 * b * ((1.0 + b * b) * std::cos(theta[j]) - 2.0 * b) / (den * den);
            }
            return;
        case ModelKind::SineModel: {
            const double s1 = std::sin(theta[0]), c1 = std::cos(theta[0]);
            const double s2 = std::sin(theta[1]), c2 = std::cos(theta[1]);
            const double k1 = params_[0], k2 = params_[1], rho = params_[2];
            out[0] = k1 * c1 + rho * s1 * s2;
            out[1] = -rho * c1 * c2;
            out[2] = out[1];
            out[3] = k2 * c2 + rho * s1 * s2;
            return;
        }
        case ModelKind::BivariateWrappedCauchy: {
            const double s1 = std::sin(theta[0]), c1 = std::cos(theta[0]);
            const double s2 = std::sin(theta[1]), c2 = std::cos(theta[1]);
            const double cc1 = bwc_c_[2], cc2 = bwc_c_[3], cc3 = bwc_c_[4], cc4 = bwc_c_[5];
            const double d = bwc_denominator(theta[0], theta[1]);
            const double d1 = cc1 * s1 + cc3 * s1 * c2 - cc4 * c1 * s2;
            const double d2 = cc2 * s2 + cc3 * c1 * s2 - cc4 * s1 * c2;
            const double d11 = cc1 * c1 + cc3 * c1 * c2 + cc4 * s1 * s2;
            const double d22 = cc2 * c2 + cc3 * c1 * c2 + cc4 * s1 * s2;
            const double d12 = -cc3 * s1 * s2 - cc4 * c1 * c2;
            out[0] = d11 / d - d1 * d1 / (d * d);
            out[1] = d12 / d - d1 * d2 / (d * d);
            out[2] = out[1];
            out[3] = d22 / d - d2 * d2 / (d * d);
            return;
        }
        case ModelKind::UniformTorus:
            return;
    }
}

AngleMatrix BaseModel::sample(std::size_t n, RngStream& rng) const {
    if (n < 1) throw DomainError("sample: n must be >= 1");
    std::vector<double> values(n * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < n; ++i) {
        sample_into(rng, std::span<double>(values.data() + i * dim_, dim_));
    }
    return AngleMatrix(n, dim_, std::move(values));
}

void BaseModel::sample_into(RngStream& rng, std::span<double> out) const {
    switch (kind_) {
        case ModelKind::UniformTorus:
            for (int j = 0; j < dim_; ++j) out[j] = -kPi + kTwoPi * rng.uniform();
            return;
        case ModelKind::IndepWrappedCauchy:
            for (int j = 0; j < dim_; ++j) {
                const double b = params_[j];
                const double u = rng.uniform_open();
                const double t = 2.0 * std::atan((1.0 - b) / (1.0 + b) * std::tan(kPi * (u - 0.5)));
                out[j] = wrap_angle(t);
            }
            return;
        case ModelKind::SineModel:
        case ModelKind::BivariateWrappedCauchy: {
            const double envelope = sup_density_ * kEnvelopeSafety;
            const double acceptance = 1.0 / (envelope * std::pow(kTwoPi, dim_));
            if (acceptance < kMinAcceptanceRate) {
                throw DegenerateError("concentration too high for rejection sampler (acceptance rate " +
                                      std::to_string(acceptance) + ")");
            }
            for (;;) {
                for (int j = 0; j < dim_; ++j) out[j] = -kPi + kTwoPi * rng.uniform();
                if (rng.uniform() * envelope <= density(out)) return;
            }
        }
    }
}

AngleMatrix sample_base(const BaseModel& model, std::size_t n, RngStream& rng) {
    return model.sample(n, rng);
}

std::vector<double> numerical_score(const BaseModel& model, std::span<const double> theta) {
    const double eps_cbrt = std::cbrt(std::numeric_limits<double>::epsilon());
    std::vector<double> t(theta.begin(), theta.end());
    std::vector<double> out(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const double h = eps_cbrt * std::max(1.0, std::fabs(theta[j]));
        t[j] = theta[j] + h;
        const double up = model.log_density(t);
        t[j] = theta[j] - h;
        const double down = model.log_density(t);
        t[j] = theta[j];
        out[j] = -(up - down) / (2.0 * h);
    }
    return out;
}

Matrix numerical_score_jacobian(const BaseModel& model, std::span<const double> theta) {
    const double eps_cbrt = std::cbrt(std::numeric_limits<double>::epsilon());
    const std::size_t d = theta.size();
    std::vector<double> t(theta.begin(), theta.end());
    Matrix jac(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const double h = eps_cbrt * std::max(1.0, std::fabs(theta[k]));
        t[k] = theta[k] + h;
        const auto up = model.score(t);
        t[k] = theta[k] - h;
        const auto down = model.score(t);
        t[k] = theta[k];
        for (std::size_t j = 0; j < d; ++j) jac(j, k) = (up[j] - down[j]) / (2.0 * h);
    }
    return jac;
}

}  // namespace torsym
