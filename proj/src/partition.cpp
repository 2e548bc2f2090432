#include "famedkit/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace famedkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx I(0, 1);

struct Axis {
    std::vector<cplx> y, w;
};

Axis make_axis(double d, double L, double phi, int nodes) {
    const auto& g = gauss_rule(20);
    const int panels = std::max(1, nodes / 20);
    Axis ax;
    const double width = 2 * L / panels;
    const cplx dir = std::polar(1.0, phi);
    for (int p = 0; p < panels; ++p) {
        double mid = -L + (p + 0.5) * width;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double h = mid + 0.5 * width * g.x[i];
            ax.y.push_back(I * d + h * dir);
            ax.w.push_back(0.5 * width * g.w[i] * dir);
        }
    }
    return ax;
}

double solve_length(double rate, double g, double tail) {
    if (g <= 0) return tail / rate;
    return (-rate + std::sqrt(rate * rate + 4 * g * tail)) / (2 * g);
}

double sign_of(double v) {
    return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
}

// tilt angles phi_k = tilt sign(Q_kk) when Q_kl sin(phi_k + phi_l) is positive definite
std::vector<double> choose_tilt(const Eigen::MatrixXd& Q, double tilt) {
    const int n = static_cast<int>(Q.rows());
    std::vector<double> phi(n, 0.0);
    if (tilt == 0) return phi;
    for (int k = 0; k < n; ++k) phi[k] = tilt * sign_of(Q(k, k));
    Eigen::MatrixXd R(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) R(k, l) = Q(k, l) * std::sin(phi[k] + phi[l]);
    Eigen::LLT<Eigen::MatrixXd> llt(R);
    if (llt.info() != Eigen::Success) return std::vector<double>(n, 0.0);
    for (int k = 0; k < n; ++k)
        if (phi[k] == 0) return std::vector<double>(n, 0.0);
    return phi;
}

void check_band(double im, double b) {
    if (!(std::abs(im) < kPi * (1 + b * b))) throw QuadratureError("contour leaves the analyticity band");
}

cplx axis_log(cplx y, int k, const PotentialData& pd, double b) {
    const double s = pd.s(k);
    const double h = 2 * kPi * b * b;
    return s * y * pd.v(k) / (2 * kPi) + (I * pd.Q(k, k) * y * y + s * y * pd.v(k)) / h +
           s * log_phi_b(y / (2 * kPi * b), b);
}

// sum over a tensor grid of exp(sum of axis logs + cross terms)
cplx tensor_sum(const std::vector<std::vector<cplx>>& ylist, const std::vector<std::vector<cplx>>& logs,
                const std::vector<std::vector<cplx>>& weights, const Eigen::MatrixXd& Q, double b) {
    const size_t n = ylist.size();
    const double h = 2 * kPi * b * b;
    std::vector<size_t> idx(n, 0);
    cplx total = 0;
    if (n == 0) return 1.0;
    while (true) {
        cplx lg = 0, w = 1;
        for (size_t k = 0; k < n; ++k) {
            lg += logs[k][idx[k]];
            w *= weights[k][idx[k]];
        }
        for (size_t k = 0; k < n; ++k)
            for (size_t l = k + 1; l < n; ++l)
                if (Q(k, l) != 0) lg += 2.0 * I * Q(k, l) * ylist[k][idx[k]] * ylist[l][idx[l]] / h;
        total += w * std::exp(lg);
        size_t k = 0;
        while (k < n && ++idx[k] == ylist[k].size()) idx[k++] = 0;
        if (k == n) break;
    }
    return total;
}

}

PartitionSetup partition_setup(const OrderedTriangulation& tri, const AngleStructure& alpha, double b) {
    PartitionSetup ps;
    ps.km = kinematical(tri);
    if (ps.km.Q.empty()) throw SingularMatrix("det A = 0");
    ps.nz = nz_system(tri);
    if (ps.nz.Binv.empty()) throw SingularMatrix("NZ matrix B is singular");
    const auto* l = tri.curve(ps.nz.curve);
    ps.lambda = angular_holonomy(tri, alpha, *l);
    ps.pd = potential_data(ps.km, ps.nz, ps.lambda);
    for (int k = 0; k < tri.size(); ++k) {
        ps.a.push_back(alpha.angles[3 * k]);
        ps.rate.push_back(std::min(alpha.angles[3 * k + 1], alpha.angles[3 * k + 2]) * (1 + 1 / (b * b)) / (2 * kPi));
    }
    return ps;
}

ContourSpec make_contour(const PartitionSetup& ps, double b, const ContourOptions& opt) {
    const int n = static_cast<int>(ps.a.size());
    if (n > 3) throw QuadratureError("quadrature supports at most 3 tetrahedra");
    ContourSpec c;
    c.nodes = opt.nodes;
    c.tilt = choose_tilt(ps.pd.Q, opt.tilt);
    const double scale = opt.scaling == ContourScaling::Scaled ? 1 + b * b : 1.0;
    for (int k = 0; k < n; ++k) {
        if (!(ps.rate[k] > 0)) throw QuadratureError("angle too close to 0");
        double d = ps.pd.s(k) * (kPi - ps.a[k]) * scale + opt.extra_shift;
        check_band(d, b);
        c.shift.push_back(d);
        double g = std::abs(ps.pd.Q(k, k)) * std::sin(2 * std::abs(c.tilt[k])) / (2 * kPi * b * b);
        c.half_length.push_back(solve_length(ps.rate[k], g, opt.tail_exponent));
    }
    return c;
}

cplx partition_log_integrand(const CVec& y, const PotentialData& pd, double b) {
    cplx lg = 0;
    const int n = static_cast<int>(y.size());
    for (int k = 0; k < n; ++k) lg += axis_log(y(k), k, pd, b);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (k != l) lg += I * pd.Q(k, l) * y(k) * y(l) / (2 * kPi * b * b);
    return lg;
}

cplx partition_integral(const PartitionSetup& ps, double b, const ContourSpec& c) {
    const size_t n = c.shift.size();
    std::vector<std::vector<cplx>> ys(n), logs(n), ws(n);
    for (size_t k = 0; k < n; ++k) {
        auto ax = make_axis(c.shift[k], c.half_length[k], c.tilt[k], c.nodes);
        ys[k] = ax.y;
        ws[k] = ax.w;
        for (auto y : ax.y) logs[k].push_back(axis_log(y, static_cast<int>(k), ps.pd, b));
    }
    return tensor_sum(ys, logs, ws, ps.pd.Q, b);
}

double partition_modulus(const OrderedTriangulation& tri, const AngleStructure& alpha, double b,
                         const ContourOptions& opt) {
    auto ps = partition_setup(tri, alpha, b);
    auto c = make_contour(ps, b, opt);
    cplx integral = partition_integral(ps, b, c);
    const int n = tri.size();
    return std::abs(integral) / std::abs(ps.km.detA.convert_to<double>()) / std::pow(2 * kPi * b, n);
}

Prediction predicted_modulus(const OrderedTriangulation& tri, const AngleStructure& alpha, double b) {
    auto ps = partition_setup(tri, alpha, b);
    const auto* m = tri.curve("m");
    if (!m) throw InputError("missing curve data: 'm'");
    auto sol = solve_gluing(ps.nz, ps.km.signs, I * ps.lambda);
    if (!sol.converged) throw std::runtime_error("gluing equations did not converge: " + sol.message);
    auto fl = strong_flattening(tri);
    Prediction p;
    p.volume = hyperbolic_volume(sol);
    p.tau = one_loop_tau(ps.nz, sol, fl).tau;
    p.hl = complex_holonomy(*tri.curve(ps.nz.curve), sol);
    p.hm = complex_holonomy(*m, sol);
    double detA = std::abs(ps.km.detA.convert_to<double>());
    double two_detBinv = std::abs(2.0 / ps.nz.detB.convert_to<double>());
    p.prefactor = std::abs(std::exp(p.hm * p.hl / (4 * kPi * I))) / (detA * std::sqrt(two_detBinv)) /
                  std::sqrt(std::abs(p.tau));
    p.modulus = p.prefactor * std::exp(-p.volume / (2 * kPi * b * b));
    return p;
}

JonesSetup jones_setup(const OrderedTriangulation& tri, const AngleStructure& alpha, double b) {
    JonesSetup js;
    js.ps = partition_setup(tri, alpha, b);
    const auto* m = tri.curve("m");
    if (!m) throw InputError("missing curve data: 'm'");
    const int n = tri.size();
    long csum = 0;
    for (int k = 0; k < n; ++k) {
        if (m->Cp[k] != 0 || m->Cpp[k] != 0) throw InputError("meridian must only involve z");
        js.a.push_back(double(m->C[k] * tri.tets[k].sign));
        csum += m->C[k];
    }
    js.a0 = I * kPi * double(csum - m->nu);
    for (int k = 0; k < n; ++k)
        if (js.a[k] != 0) {
            js.pivot = k;
            break;
        }
    if (js.pivot < 0) throw std::runtime_error("no pivot variable");
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n - 1);
    for (int k = 0, j = 0; k < n; ++k) {
        if (k == js.pivot) continue;
        P(k, j) = 1;
        P(js.pivot, j) = -js.a[k] / js.a[js.pivot];
        ++j;
    }
    js.reduced_Q = P.transpose() * js.ps.pd.Q * P;
    return js;
}

ContourSpec jones_contour(const JonesSetup& js, double b, const ContourOptions& opt) {
    const int n = static_cast<int>(js.ps.a.size());
    if (n > 3) throw QuadratureError("quadrature supports at most 3 tetrahedra");
    ContourSpec c;
    c.nodes = opt.nodes;
    auto phi = choose_tilt(js.reduced_Q, opt.tilt);
    const double scale = opt.scaling == ContourScaling::Scaled ? 1 + b * b : 1.0;
    for (int k = 0, j = 0; k < n; ++k) {
        if (k == js.pivot) continue;
        double d = js.ps.pd.s(k) * (kPi - js.ps.a[k]) * scale + opt.extra_shift;
        check_band(d, b);
        c.shift.push_back(d);
        c.tilt.push_back(phi[j]);
        double rate = js.ps.rate[k] + js.ps.rate[js.pivot] * std::abs(js.a[k] / js.a[js.pivot]);
        double g = std::abs(js.reduced_Q(j, j)) * std::sin(2 * std::abs(phi[j])) / (2 * kPi * b * b);
        c.half_length.push_back(solve_length(rate, g, opt.tail_exponent));
        ++j;
    }
    return c;
}

JonesIntegrator::JonesIntegrator(const JonesSetup& js, double b, const ContourSpec& c) : js_(js), b_(b) {
    const int n = static_cast<int>(js.a.size());
    for (int k = 0; k < n; ++k)
        if (k != js.pivot) free_.push_back(k);
    for (size_t j = 0; j < c.shift.size(); ++j) {
        auto ax = make_axis(c.shift[j], c.half_length[j], c.tilt[j], c.nodes);
        std::vector<cplx> lg;
        for (auto y : ax.y) lg.push_back(axis_log(y, free_[j], js.ps.pd, b));
        y_.push_back(ax.y);
        w_.push_back(ax.w);
        logs_.push_back(lg);
    }
}

cplx JonesIntegrator::operator()(cplx x) const {
    const int n = static_cast<int>(js_.a.size());
    const int p = js_.pivot;
    const double h = 2 * kPi * b_ * b_;
    const auto& Q = js_.ps.pd.Q;
    std::vector<size_t> idx(y_.size(), 0);
    cplx total = 0;
    CVec y(n);
    while (true) {
        cplx lg = 0, w = 1;
        cplx yp = x - js_.a0;
        for (size_t j = 0; j < y_.size(); ++j) {
            y(free_[j]) = y_[j][idx[j]];
            lg += logs_[j][idx[j]];
            w *= w_[j][idx[j]];
            yp -= js_.a[free_[j]] * y(free_[j]);
        }
        yp /= js_.a[p];
        y(p) = yp;
        check_band(yp.imag(), b_);
        lg += axis_log(yp, p, js_.ps.pd, b_);
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                if (Q(k, l) != 0) lg += 2.0 * I * Q(k, l) * y(k) * y(l) / h;
        total += w * std::exp(lg);
        size_t j = 0;
        while (j < y_.size() && ++idx[j] == y_[j].size()) idx[j++] = 0;
        if (j == y_.size()) break;
    }
    return total / (js_.a[p] * js_.ps.km.detA.convert_to<double>());
}

cplx jones_function(const JonesSetup& js, cplx x, double b, const ContourSpec& c) {
    return JonesIntegrator(js, b, c)(x);
}

cplx jones_function(const OrderedTriangulation& tri, cplx x, double b, const ContourOptions& opt) {
    auto alpha = maximize_volume(tri).maximizer;
    auto js = jones_setup(tri, alpha, b);
    return jones_function(js, x, b, jones_contour(js, b, opt));
}

Reconstruction jones_reconstruction(const OrderedTriangulation& tri, const AngleStructure& alpha, double b,
                                    const ReconstructionOptions& opt) {
    auto js = jones_setup(tri, alpha, b);
    auto c = jones_contour(js, b, opt.jones);
    JonesIntegrator jf(js, b, c);
    const double lam = js.ps.lambda;
    const auto& g = gauss_rule(20);
    auto panel = [&](double lo, double& peak) {
        cplx s = 0;
        peak = 0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double x = lo + 0.5 * opt.x_panel * (1 + g.x[i]);
            cplx f = jf(x) * std::exp(x * lam * (1 + 1 / (b * b)) / (4 * kPi));
            peak = std::max(peak, std::abs(f));
            s += 0.5 * opt.x_panel * g.w[i] * f;
        }
        return s;
    };
    Reconstruction r;
    double scale = 0, p1 = 0, p2 = 0;
    for (int k = 0; (k + 1) * opt.x_panel <= opt.x_max; ++k) {
        r.integral += panel(k * opt.x_panel, p1) + panel(-(k + 1) * opt.x_panel, p2);
        r.x_nodes += 2 * static_cast<int>(g.x.size());
        r.x_half_length = (k + 1) * opt.x_panel;
        scale = std::max({scale, p1, p2});
        if (std::max(p1, p2) < opt.x_cutoff * scale) break;
    }
    const int n = tri.size();
    r.expected = partition_modulus(tri, alpha, b, opt.partition) * std::pow(2 * kPi * b, n);
    r.rel_error = std::abs(std::abs(r.integral) - r.expected) / r.expected;
    return r;
}

double extrapolate_to_zero(const std::vector<double>& t, const std::vector<double>& y, int degree) {
    const int n = static_cast<int>(t.size());
    Eigen::MatrixXd V(n, degree + 1);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        double p = 1;
        for (int j = 0; j <= degree; ++j) {
            V(i, j) = p;
            p *= t[i];
        }
        rhs(i) = y[i];
    }
    Eigen::VectorXd c = V.colPivHouseholderQr().solve(rhs);
    return c(0);
}

AsymptoticReport fit_asymptotics(std::vector<AsymptoticSample> samples, double volume, double predicted_prefactor,
                                 int power) {
    if (samples.size() < 4) throw std::invalid_argument("at least 4 samples are required");
    std::sort(samples.begin(), samples.end(), [](auto& a, auto& b) { return a.b > b.b; });
    for (size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].value < samples[i - 1].value)) throw std::runtime_error("ill-conditioned fit: non-monotone samples");
    AsymptoticReport rep;
    rep.samples = samples;
    rep.predicted_rate = -volume;
    rep.predicted_prefactor = predicted_prefactor;
    const int n = static_cast<int>(samples.size());
    rep.degree = std::min(3, n - 2);
    std::vector<double> t, rates, logpre;
    for (auto& s : samples) {
        double h = 2 * kPi * s.b * s.b;
        double lv = std::log(s.value) - power * std::log(2 * kPi * s.b);
        t.push_back(s.b * s.b);
        rates.push_back(h * lv);
        logpre.push_back(lv + volume / h);
    }
    rep.partial_rates = rates;
    rep.fitted_rate = extrapolate_to_zero(t, rates, rep.degree);
    rep.fitted_prefactor = std::exp(extrapolate_to_zero(t, logpre, rep.degree));
    rep.rate_error = std::abs(rep.fitted_rate - rep.predicted_rate);
    rep.prefactor_error = predicted_prefactor > 0 ? std::abs(rep.fitted_prefactor - predicted_prefactor) / predicted_prefactor : 0;
    return rep;
}

cplx OperatorPolynomial::operator()(cplx M, cplx L) const {
    cplx v = 0;
    for (const auto& t : terms) v += t.coef * std::pow(M, t.mpow) * std::pow(L, t.lpow);
    return v;
}

OperatorPolynomial parse_polynomial(const std::string& text) {
    OperatorPolynomial poly;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string coef;
        if (!(ls >> coef)) continue;
        OperatorPolynomial::Term t;
        if (!(ls >> t.mpow >> t.lpow)) throw InputError("expected 'coef mpow lpow'", lineno, 1);
        auto comma = coef.find(',');
        try {
            double re = std::stod(coef.substr(0, comma));
            double im = comma == std::string::npos ? 0.0 : std::stod(coef.substr(comma + 1));
            t.coef = cplx(re, im);
        } catch (const std::exception&) {
            throw InputError("bad coefficient '" + coef + "'", lineno, 1);
        }
        poly.terms.push_back(t);
    }
    return poly;
}

OperatorPolynomial load_polynomial(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_polynomial(ss.str());
}

std::vector<cplx> default_branch_samples(int count) {
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k) {
        double t = count > 1 ? double(k) / (count - 1) : 0.0;
        out.emplace_back(0.05 * std::sin(2 * kPi * t), -0.3 + 0.6 * t);
    }
    return out;
}

AJReport aj_evaluate(const OperatorPolynomial& poly, const OrderedTriangulation& tri, const std::vector<cplx>& hl_targets,
                     const std::string& meridian) {
    auto nz = nz_system(tri);
    const auto* m = tri.curve(meridian);
    if (!m) throw InputError("missing curve data: '" + meridian + "'");
    const auto* l = tri.curve(nz.curve);
    AJReport rep;
    std::vector<cplx> start;
    for (cplx target : hl_targets) {
        auto sol = solve_gluing(nz, tri.signs(), target, start);
        if (!sol.converged) throw std::runtime_error("continuation failure along the branch");
        start = sol.z;
        cplx hm = complex_holonomy(*m, sol), hl = complex_holonomy(*l, sol);
        cplx v = poly(std::exp(hm / 2.0), std::exp(hl / 2.0));
        rep.x.push_back(hm);
        rep.hl.push_back(hl);
        rep.values.push_back(v);
        rep.max_abs = std::max(rep.max_abs, std::abs(v));
    }
    return rep;
}

}
