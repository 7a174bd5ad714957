#include "hdl/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "hdl/error.hpp"

namespace hdl {

Matrix Matrix::identity(int size) {
    Matrix m(size, size);
    for (int i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw DimensionError("matrix product shape mismatch");
    Matrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Rotation Rotation::from_angles(std::span<const double> angles) {
    const int n = static_cast<int>(angles.size());
    if (n < 1) throw DomainError("rotation needs at least one angle");
    Rotation r{Matrix(2 * n, 2 * n)};
    for (int j = 0; j < n; ++j) {
        const double c = std::cos(angles[static_cast<std::size_t>(j)]);
        const double s = std::sin(angles[static_cast<std::size_t>(j)]);
        r.a(2 * j, 2 * j) = c;
        r.a(2 * j, 2 * j + 1) = -s;
        r.a(2 * j + 1, 2 * j) = s;
        r.a(2 * j + 1, 2 * j + 1) = c;
    }
    return r;
}

double unitarity_defect(const Matrix& a) {
    if (a.rows != a.cols || a.rows % 2 != 0) return INFINITY;
    const int m = a.rows;
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double ata = 0.0;
            for (int k = 0; k < m; ++k) ata += a(k, i) * a(k, j);
            worst = std::max(worst, std::abs(ata - (i == j ? 1.0 : 0.0)));
        }
    // (J v)_{2j} = -v_{2j+1}, (J v)_{2j+1} = v_{2j}
    auto j_entry = [](int r, int c) {
        if (r % 2 == 0 && c == r + 1) return -1.0;
        if (r % 2 == 1 && c == r - 1) return 1.0;
        return 0.0;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double aj = 0.0, ja = 0.0;
            for (int k = 0; k < m; ++k) {
                aj += a(i, k) * j_entry(k, j);
                ja += j_entry(i, k) * a(k, j);
            }
            worst = std::max(worst, std::abs(aj - ja));
        }
    return worst;
}

CatalogMap::CatalogMap(Variant v) : v_(std::move(v)) {}
CatalogMap::CatalogMap(Composition c) : v_(std::move(c)) {}

namespace {

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string CatalogMap::id() const {
    return std::visit(
        Overloaded{
            [](const Translation& t) {
                std::string s = "translation:";
                const auto c = t.b.coords();
                for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + format_number(c[i]);
                return s;
            },
            [](const Rotation& r) {
                for (int i = 0; i < r.a.rows; ++i)
                    for (int j = 0; j < r.a.cols; ++j)
                        if (i / 2 != j / 2 && r.a(i, j) != 0.0) return std::string("rotation[unitary]");
                std::string s = "rotation:";
                for (int j = 0; j < r.a.rows / 2; ++j) {
                    s += (j ? "," : "") + format_number(std::atan2(r.a(2 * j + 1, 2 * j), r.a(2 * j, 2 * j)));
                }
                return s;
            },
            [](const Dilation& d) { return d.alpha == 1.0 ? std::string("identity") : "dilation:" + format_number(d.alpha); },
            [](const Composition& c) {
                std::string s = "compose:";
                for (std::size_t i = 0; i < c.parts.size(); ++i) s += (i ? ";" : "") + c.parts[i].id();
                return s;
            },
        },
        v_);
}

void CatalogMap::validate(int n) const {
    std::visit(Overloaded{
                   [n](const Translation& t) {
                       if (t.b.dim() != n) throw DomainError("translation point has the wrong dimension");
                       if (!t.b.is_finite()) throw DomainError("translation point is not finite");
                   },
                   [n](const Rotation& r) {
                       if (r.a.rows != 2 * n || r.a.cols != 2 * n) {
                           throw DomainError("rotation matrix must be " + std::to_string(2 * n) + "x" +
                                             std::to_string(2 * n));
                       }
                       if (!(unitarity_defect(r.a) <= kUnitaryTolerance)) {
                           throw DomainError("rotation matrix is not unitary on C^n");
                       }
                   },
                   [](const Dilation& d) {
                       if (!(d.alpha > 0.0) || !std::isfinite(d.alpha)) {
                           throw DomainError("dilation factor must be positive");
                       }
                   },
                   [n](const Composition& c) {
                       for (const auto& p : c.parts) p.validate(n);
                   },
               },
               v_);
}

GroupPoint CatalogMap::apply(const GroupPoint& g) const {
    return std::visit(Overloaded{
                          [&](const Translation& t) { return group_mul(t.b, g); },
                          [&](const Rotation& r) {
                              GroupPoint out = g;
                              const int m = r.a.rows;
                              for (int i = 0; i < m; ++i) {
                                  double s = 0.0;
                                  for (int k = 0; k < m; ++k) s += r.a(i, k) * g.horizontal[static_cast<std::size_t>(k)];
                                  out.horizontal[static_cast<std::size_t>(i)] = s;
                              }
                              return out;
                          },
                          [&](const Dilation& d) { return dilate(g, d.alpha); },
                          [&](const Composition& c) {
                              GroupPoint out = g;
                              for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) out = it->apply(out);
                              return out;
                          },
                      },
                      v_);
}

Matrix CatalogMap::horizontal_differential(const GroupPoint& g) const {
    const int n = g.dim();
    const int w = 2 * n;
    return std::visit(
        Overloaded{
            [&](const Translation& t) {
                Matrix h(w + 1, w);
                for (int i = 0; i < w; ++i) h(i, i) = 1.0;
                for (int j = 0; j < n; ++j) {
                    h(w, 2 * j) = 2.0 * (t.b.y(j) + g.y(j));
                    h(w, 2 * j + 1) = -2.0 * (t.b.x(j) + g.x(j));
                }
                return h;
            },
            [&](const Rotation& r) {
                Matrix h(w + 1, w);
                for (int k = 0; k < w; ++k)
                    for (int i = 0; i < w; ++i) h(k, i) = r.a(k, i);
                for (int j = 0; j < n; ++j) {
                    h(w, 2 * j) = 2.0 * g.y(j);
                    h(w, 2 * j + 1) = -2.0 * g.x(j);
                }
                return h;
            },
            [&](const Dilation& d) {
                Matrix h(w + 1, w);
                const double a2 = d.alpha * d.alpha;
                for (int i = 0; i < w; ++i) h(i, i) = d.alpha;
                for (int j = 0; j < n; ++j) {
                    h(w, 2 * j) = 2.0 * a2 * g.y(j);
                    h(w, 2 * j + 1) = -2.0 * a2 * g.x(j);
                }
                return h;
            },
            [&](const Composition& c) {
                // Horizontal chain rule; every part is contact, so its differential maps the
                // horizontal frame into the horizontal frame at the image point.
                Matrix acc(w, w);
                acc = Matrix::identity(w);
                Matrix full(w + 1, w);
                for (int i = 0; i < w; ++i) full(i, i) = 1.0;
                for (int j = 0; j < n; ++j) {
                    full(w, 2 * j) = 2.0 * g.y(j);
                    full(w, 2 * j + 1) = -2.0 * g.x(j);
                }
                GroupPoint cur = g;
                for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
                    const Matrix step = it->horizontal_differential(cur);
                    full = step * acc;
                    Matrix horiz(w, w);
                    for (int k = 0; k < w; ++k)
                        for (int i = 0; i < w; ++i) horiz(k, i) = full(k, i);
                    acc = horiz;
                    cur = it->apply(cur);
                }
                return full;
            },
        },
        v_);
}

Matrix CatalogMap::euclidean_jacobian(const GroupPoint& g) const {
    const int n = g.dim();
    const int w = 2 * n;
    return std::visit(Overloaded{
                          [&](const Translation& t) {
                              Matrix j = Matrix::identity(w + 1);
                              for (int k = 0; k < n; ++k) {
                                  j(w, 2 * k) = 2.0 * t.b.y(k);
                                  j(w, 2 * k + 1) = -2.0 * t.b.x(k);
                              }
                              return j;
                          },
                          [&](const Rotation& r) {
                              Matrix j = Matrix::identity(w + 1);
                              for (int a = 0; a < w; ++a)
                                  for (int b = 0; b < w; ++b) j(a, b) = r.a(a, b);
                              return j;
                          },
                          [&](const Dilation& d) {
                              Matrix j = Matrix::identity(w + 1);
                              for (int a = 0; a < w; ++a) j(a, a) = d.alpha;
                              j(w, w) = d.alpha * d.alpha;
                              return j;
                          },
                          [&](const Composition& c) {
                              Matrix acc = Matrix::identity(w + 1);
                              GroupPoint cur = g;
                              for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
                                  acc = it->euclidean_jacobian(cur) * acc;
                                  cur = it->apply(cur);
                              }
                              return acc;
                          },
                      },
                      v_);
}

GroupMap catalog_to_map(const CatalogMap& c, int n) {
    c.validate(n);
    auto shared = std::make_shared<const CatalogMap>(c);
    std::vector<ScalarField> comps;
    comps.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= 2 * n; ++k) {
        ScalarField f;
        f.n = n;
        if (k == 2 * n) {
            f.value = [shared](const GroupPoint& g) { return shared->apply(g).vertical; };
        } else {
            const auto idx = static_cast<std::size_t>(k);
            f.value = [shared, idx](const GroupPoint& g) { return shared->apply(g).horizontal[idx]; };
        }
        f.gradient = [shared, k](const GroupPoint& g) {
            const Matrix h = shared->horizontal_differential(g);
            std::vector<double> row(static_cast<std::size_t>(h.cols));
            for (int i = 0; i < h.cols; ++i) row[static_cast<std::size_t>(i)] = h(k, i);
            return row;
        };
        comps.push_back(std::move(f));
    }
    return GroupMap(c.id(), n, n, std::move(comps));
}

namespace {

std::vector<double> parse_numbers(std::string_view text, char sep) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = std::min(text.find(sep, pos), text.size());
        const std::string token(text.substr(pos, next - pos));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw DomainError("malformed number '" + token + "' in map id");
        }
        if (used != token.size()) throw DomainError("malformed number '" + token + "' in map id");
        out.push_back(v);
        pos = next + 1;
    }
    return out;
}

}  // namespace

CatalogMap parse_catalog_id(std::string_view id) {
    if (id == "identity") return Dilation{1.0};
    const auto colon = id.find(':');
    if (colon == std::string_view::npos) throw DomainError("unknown catalog map id '" + std::string(id) + "'");
    const auto kind = id.substr(0, colon);
    const auto args = id.substr(colon + 1);
    if (kind == "dilation") {
        const auto v = parse_numbers(args, ',');
        if (v.size() != 1) throw DomainError("dilation takes one factor");
        Dilation d{v[0]};
        CatalogMap(d).validate(1);
        return d;
    }
    if (kind == "translation") {
        const auto v = parse_numbers(args, ',');
        if (v.size() < 3 || v.size() % 2 == 0) throw DomainError("translation needs 2n+1 coordinates");
        return Translation{GroupPoint::from_coords(v)};
    }
    if (kind == "rotation") {
        const auto v = parse_numbers(args, ',');
        return Rotation::from_angles(v);
    }
    if (kind == "compose") {
        Composition c;
        std::size_t pos = 0;
        while (pos <= args.size()) {
            const std::size_t next = std::min(args.find(';', pos), args.size());
            c.parts.push_back(parse_catalog_id(args.substr(pos, next - pos)));
            pos = next + 1;
        }
        return c;
    }
    throw DomainError("unknown catalog map kind '" + std::string(kind) + "'");
}

}  // namespace hdl
