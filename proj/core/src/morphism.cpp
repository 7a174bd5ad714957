#include "hdl/morphism.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "hdl/error.hpp"
#include "hdl/parallel.hpp"

namespace hdl {

namespace {

ResidualStats summarize(std::span<const double> values) {
    ResidualStats s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        if (values[i] > s.max || i == 0) {
            s.max = values[i];
            s.argmax = i;
        }
    }
    s.mean = sum / static_cast<double>(values.size());
    return s;
}

void require_points(const GroupMap& f, std::span<const GroupPoint> points, const char* who) {
    if (points.empty()) throw DomainError(std::string(who) + ": empty sample set");
    for (const auto& g : points) {
        if (g.dim() != f.source_dim) throw DimensionError(std::string(who) + ": sample point outside the source group");
    }
}

DerivativeMode mode_for(const GroupMap& f) {
    return f.has_gradients() ? DerivativeMode::prefer_analytic : DerivativeMode::finite_difference;
}

// grads[k][i] = i-th horizontal field applied to component k.
std::vector<std::vector<double>> gradients(const GroupMap& f, const GroupPoint& g, double step, DerivativeMode mode) {
    std::vector<std::vector<double>> grads;
    grads.reserve(f.components.size());
    for (const auto& c : f.components) grads.push_back(horizontal_gradient(c, g, step, mode));
    return grads;
}

std::vector<ResidualStats> per_column(const std::vector<std::vector<double>>& rows, std::size_t cols) {
    std::vector<ResidualStats> out;
    std::vector<double> column(rows.size());
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][c];
        out.push_back(summarize(column));
    }
    return out;
}

}  // namespace

std::vector<GroupPoint> sample_points(int n, std::size_t count, double radius, RngSpec rng) {
    if (n < 1) throw DimensionError("sample_points: n must be >= 1");
    if (!(radius > 0.0)) throw DomainError("sample_points: radius must be positive");
    const NormalStream stream(rng);
    const auto width = 2 * static_cast<std::size_t>(n) + 1;
    std::vector<double> c(width + 1);
    std::vector<GroupPoint> out;
    out.reserve(count);
    std::uint64_t block = 0;
    while (out.size() < count) {
        for (std::size_t i = 0; i < width; i += 2) {
            const auto u = stream.uniforms(block++);
            c[i] = 2.0 * u[0] - 1.0;
            c[i + 1] = 2.0 * u[1] - 1.0;
        }
        const GroupPoint g = GroupPoint::from_coords(std::span<const double>(c.data(), width));
        if (koranyi_norm(g) < 1.0) out.push_back(dilate(g, radius));
    }
    return out;
}

HarmonicCheck check_harmonic(const GroupMap& f, std::span<const GroupPoint> points, double step, unsigned workers) {
    require_points(f, points, "check_harmonic");
    const auto rows = parallel_map(points.size(), workers, [&](std::size_t i) {
        std::vector<double> r;
        r.reserve(f.components.size());
        for (const auto& c : f.components) r.push_back(std::abs(hsub_laplacian(c, points[i], step)));
        return r;
    });
    HarmonicCheck out;
    out.components = per_column(rows, f.components.size());
    for (const auto& s : out.components) out.max = std::max(out.max, s.max);
    return out;
}

ConformalCheck check_conformal(const GroupMap& f, std::span<const GroupPoint> points, double step, unsigned workers) {
    require_points(f, points, "check_conformal");
    const auto mode = mode_for(f);
    const auto m = 2 * static_cast<std::size_t>(f.target_dim);
    struct Row {
        double lambda, residual, spread;
    };
    const auto rows = parallel_map(points.size(), workers, [&](std::size_t p) {
        const auto grads = gradients(f, points[p], step, mode);
        std::vector<double> gram(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < grads[i].size(); ++k) s += grads[i][k] * grads[j][k];
                gram[i * m + j] = s;
            }
        }
        double trace = 0.0, lo = gram[0], hi = gram[0];
        for (std::size_t i = 0; i < m; ++i) {
            trace += gram[i * m + i];
            lo = std::min(lo, gram[i * m + i]);
            hi = std::max(hi, gram[i * m + i]);
        }
        const double lambda = trace / static_cast<double>(m);
        double residual = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                residual = std::max(residual, std::abs(gram[i * m + j] - (i == j ? lambda : 0.0)));
            }
        }
        return Row{lambda, residual, hi - lo};
    });
    ConformalCheck out;
    for (const auto& r : rows) {
        out.lambda.push_back(r.lambda);
        out.gram_residual.push_back(r.residual);
        out.diagonal_spread.push_back(r.spread);
    }
    out.residual = summarize(out.gram_residual);
    out.spread = summarize(out.diagonal_spread);
    return out;
}

ContactCheck check_contact(const GroupMap& f, std::span<const GroupPoint> points, double step, unsigned workers) {
    require_points(f, points, "check_contact");
    const auto mode = mode_for(f);
    const int p = f.target_dim;
    const auto dirs = 2 * static_cast<std::size_t>(f.source_dim);
    const auto rows = parallel_map(points.size(), workers, [&](std::size_t q) {
        const auto& g = points[q];
        const auto grads = gradients(f, g, step, mode);
        std::vector<double> uv(2 * static_cast<std::size_t>(p));
        for (std::size_t k = 0; k < uv.size(); ++k) uv[k] = f.components[k](g);
        const auto& dh = grads[2 * static_cast<std::size_t>(p)];
        std::vector<double> r(dirs);
        for (std::size_t i = 0; i < dirs; ++i) {
            double rhs = 0.0;
            for (int j = 0; j < p; ++j) {
                const auto ju = 2 * static_cast<std::size_t>(j), jv = ju + 1;
                rhs += uv[jv] * grads[ju][i] - uv[ju] * grads[jv][i];
            }
            r[i] = std::abs(dh[i] - 2.0 * rhs);
        }
        return r;
    });
    ContactCheck out;
    out.equations = per_column(rows, dirs);
    for (const auto& s : out.equations) out.max = std::max(out.max, s.max);
    return out;
}

MorphismTolerances MorphismTolerances::for_map(const GroupMap& f) {
    const double tol = f.has_gradients() ? kAnalyticTolerance : kDifferenceTolerance;
    return {tol, tol, tol};
}

MorphismReport is_harmonic_morphism(const GroupMap& f, std::span<const GroupPoint> points,
                                    const MorphismTolerances& tol, double step, unsigned workers) {
    require_points(f, points, "is_harmonic_morphism");
    MorphismReport r;
    r.map_name = f.name;
    r.source_dim = f.source_dim;
    r.target_dim = f.target_dim;
    r.points = points.size();
    r.analytic_gradients = f.has_gradients();
    r.step = step;
    r.tolerances = tol;
    r.harmonic = check_harmonic(f, points, step, workers);
    r.conformal = check_conformal(f, points, step, workers);
    r.contact = check_contact(f, points, step, workers);
    r.harmonic_ok = r.harmonic.max <= tol.harmonic;
    r.conformal_ok = r.conformal.residual.max <= tol.conformal;
    r.contact_ok = r.contact.max <= tol.contact;
    return r;
}

MorphismReport is_harmonic_morphism(const GroupMap& f, std::span<const GroupPoint> points, double step,
                                    unsigned workers) {
    return is_harmonic_morphism(f, points, MorphismTolerances::for_map(f), step, workers);
}

DistortionCheck distortion_check(const CatalogMap& f, int n, std::span<const GroupPoint> points) {
    f.validate(n);
    if (points.empty()) throw DomainError("distortion_check: empty sample set");
    const int m = 2 * n;
    DistortionCheck out;
    std::vector<double> abs_res, rel_res;
    for (const auto& g : points) {
        if (g.dim() != n) throw DimensionError("distortion_check: sample point outside H^n");
        const Matrix dh = f.horizontal_differential(g);
        Eigen::MatrixXd d(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) d(r, c) = dh(r, c);
        const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(d).singularValues()(0);
        const Matrix jac = f.euclidean_jacobian(g);
        Eigen::MatrixXd j(m + 1, m + 1);
        for (int r = 0; r <= m; ++r)
            for (int c = 0; c <= m; ++c) j(r, c) = jac(r, c);
        const double det = std::abs(j.determinant());
        const double lhs = std::pow(norm, m + 2);
        out.operator_norm.push_back(norm);
        out.jacobian.push_back(det);
        abs_res.push_back(std::abs(lhs - det));
        rel_res.push_back(std::abs(lhs - det) / std::max(det, 1e-300));
    }
    out.absolute = summarize(abs_res);
    out.relative = summarize(rel_res);
    return out;
}

namespace {

ScalarField field(int n, ScalarField::Evaluator v, ScalarField::Gradient g) {
    return ScalarField{n, std::move(v), std::move(g)};
}

}  // namespace

GroupMap projection_map() {
    std::vector<ScalarField> c;
    c.push_back(field(2, [](const GroupPoint& g) { return g.x(0); },
                      [](const GroupPoint&) { return std::vector<double>{1, 0, 0, 0}; }));
    c.push_back(field(2, [](const GroupPoint& g) { return g.y(0); },
                      [](const GroupPoint&) { return std::vector<double>{0, 1, 0, 0}; }));
    c.push_back(field(2, [](const GroupPoint& g) { return g.vertical; }, [](const GroupPoint& g) {
        return std::vector<double>{2 * g.y(0), -2 * g.x(0), 2 * g.y(1), -2 * g.x(1)};
    }));
    return GroupMap("projection", 2, 1, std::move(c));
}

GroupMap anisotropic_map() {
    std::vector<ScalarField> c;
    c.push_back(field(1, [](const GroupPoint& g) { return 2 * g.x(0); },
                      [](const GroupPoint&) { return std::vector<double>{2, 0}; }));
    c.push_back(field(1, [](const GroupPoint& g) { return g.y(0); },
                      [](const GroupPoint&) { return std::vector<double>{0, 1}; }));
    c.push_back(field(1, [](const GroupPoint& g) { return 2 * g.vertical; },
                      [](const GroupPoint& g) { return std::vector<double>{4 * g.y(0), -4 * g.x(0)}; }));
    return GroupMap("anisotropic", 1, 1, std::move(c));
}

GroupMap square_map() {
    std::vector<ScalarField> c;
    c.push_back(field(1, [](const GroupPoint& g) { return g.x(0) * g.x(0); },
                      [](const GroupPoint& g) { return std::vector<double>{2 * g.x(0), 0}; }));
    c.push_back(field(1, [](const GroupPoint& g) { return g.y(0); },
                      [](const GroupPoint&) { return std::vector<double>{0, 1}; }));
    c.push_back(field(1, [](const GroupPoint& g) { return g.vertical; },
                      [](const GroupPoint& g) { return std::vector<double>{2 * g.y(0), -2 * g.x(0)}; }));
    return GroupMap("square", 1, 1, std::move(c));
}

GroupMap map_from_id(const std::string& id, int n) {
    if (id == "projection") return projection_map();
    if (id == "anisotropic") return anisotropic_map();
    if (id == "square") return square_map();
    return catalog_to_map(parse_catalog_id(id), n);
}

}  // namespace hdl
