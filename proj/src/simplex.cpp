#include <cmath>
#include <sstream>

#include "bulkrobust/error.hpp"
#include "bulkrobust/lp.hpp"

namespace bulkrobust {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kStallLimit = 50;
constexpr int kPivotCap = 200000;

struct Tableau {
    int m = 0;     // rows
    int cols = 0;  // variables, rhs stored separately
    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    std::vector<int> basis;
    std::vector<double> obj;  // reduced costs
    double obj_value = 0.0;   // -(current objective)
    std::vector<char> blocked;

    void pivot(int r, int c)
    {
        const double p = a[r][c];
        for (int j = 0; j < cols; ++j) {
            a[r][j] /= p;
        }
        rhs[r] /= p;
        a[r][c] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0.0) {
                continue;
            }
            const double f = a[i][c];
            for (int j = 0; j < cols; ++j) {
                a[i][j] -= f * a[r][j];
            }
            rhs[i] -= f * rhs[r];
            a[i][c] = 0.0;
            if (rhs[i] < 0 && rhs[i] > -kPivotTol) {
                rhs[i] = 0.0;
            }
        }
        const double f = obj[c];
        if (f != 0.0) {
            for (int j = 0; j < cols; ++j) {
                obj[j] -= f * a[r][j];
            }
            obj_value -= f * rhs[r];
            obj[c] = 0.0;
        }
        basis[r] = c;
    }

    void price(const std::vector<double>& cost)
    {
        obj = cost;
        obj_value = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) {
                continue;
            }
            for (int j = 0; j < cols; ++j) {
                obj[j] -= cb * a[i][j];
            }
            obj_value -= cb * rhs[i];
        }
    }

    // Returns false when unbounded.
    bool optimize(int& pivots)
    {
        int stall = 0;
        double last = obj_value;
        while (true) {
            const bool bland = stall >= kStallLimit;
            int enter = -1;
            double best = -kPivotTol;
            for (int j = 0; j < cols; ++j) {
                if (blocked[j] || obj[j] >= -kPivotTol) {
                    continue;
                }
                if (bland) {
                    enter = j;
                    break;
                }
                if (obj[j] < best) {
                    best = obj[j];
                    enter = j;
                }
            }
            if (enter < 0) {
                return true;
            }
            int leave = -1;
            double ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                if (a[i][enter] <= kPivotTol) {
                    continue;
                }
                const double q = rhs[i] / a[i][enter];
                if (leave < 0 || q < ratio - 1e-12 || (q <= ratio + 1e-12 && basis[i] < basis[leave])) {
                    leave = i;
                    ratio = q;
                }
            }
            if (leave < 0) {
                return false;
            }
            pivot(leave, enter);
            if (++pivots > kPivotCap) {
                throw InvariantError("simplex: pivot cap exceeded");
            }
            if (obj_value > last + 1e-12) {
                stall = 0;
                last = obj_value;
            } else {
                ++stall;
            }
        }
    }
};

} // namespace

void LinearProgram::add_row(std::vector<double> a, double b)
{
    if (a.size() != c.size()) {
        throw InvariantError("LinearProgram::add_row: dimension mismatch");
    }
    rows.push_back(Row{std::move(a), b});
}

std::string LinearProgram::dump() const
{
    std::ostringstream os;
    os.precision(17);
    auto terms = [&](const std::vector<double>& v) {
        bool any = false;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0.0) {
                continue;
            }
            os << (v[j] < 0 ? " -" : " +") << std::abs(v[j]) << " x" << j;
            any = true;
        }
        if (!any) {
            os << " 0";
        }
    };
    os << "/* min c.x; a_i.x >= b_i; x >= 0 */\nmin:";
    terms(c);
    os << ";\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << "r" << i << ":";
        terms(rows[i].a);
        os << " >= " << rows[i].b << ";\n";
    }
    return os.str();
}

LpResult simplex_min(const LinearProgram& lp)
{
    const int n = lp.variable_count();
    const int m = static_cast<int>(lp.rows.size());
    for (double v : lp.c) {
        if (!std::isfinite(v)) {
            throw InvariantError("simplex: non-finite objective");
        }
    }
    LpResult result;
    if (m == 0) {
        for (double v : lp.c) {
            if (v < 0) {
                result.status = LpStatus::unbounded;
                return result;
            }
        }
        result.status = LpStatus::optimal;
        result.x.assign(static_cast<std::size_t>(n), 0.0);
        return result;
    }

    // Columns: n originals, m slack/surplus, then one artificial per >= row with b > 0.
    std::vector<int> artificial_row;
    for (int i = 0; i < m; ++i) {
        if (lp.rows[i].b > 0) {
            artificial_row.push_back(i);
        }
    }
    Tableau t;
    t.m = m;
    t.cols = n + m + static_cast<int>(artificial_row.size());
    t.a.assign(m, std::vector<double>(t.cols, 0.0));
    t.rhs.assign(m, 0.0);
    t.basis.assign(m, -1);
    t.blocked.assign(t.cols, 0);
    int art = n + m;
    for (int i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        if (row.a.size() != static_cast<std::size_t>(n) || !std::isfinite(row.b)) {
            throw InvariantError("simplex: malformed row");
        }
        const double sign = row.b > 0 ? 1.0 : -1.0;
        for (int j = 0; j < n; ++j) {
            t.a[i][j] = sign * row.a[j];
        }
        // a.x - s = b; for b <= 0 negate to -a.x + s = -b >= 0 with s basic
        t.a[i][n + i] = -sign;
        t.rhs[i] = sign * row.b;
        if (row.b > 0) {
            t.a[i][art] = 1.0;
            t.basis[i] = art++;
        } else {
            t.basis[i] = n + i;
        }
    }

    if (!artificial_row.empty()) {
        std::vector<double> phase1(t.cols, 0.0);
        for (int j = n + m; j < t.cols; ++j) {
            phase1[j] = 1.0;
        }
        t.price(phase1);
        t.optimize(result.pivots);
        if (-t.obj_value > kEpsLp) {
            result.status = LpStatus::infeasible;
            return result;
        }
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < n + m) {
                continue;
            }
            for (int j = 0; j < n + m; ++j) {
                if (std::abs(t.a[i][j]) > kPivotTol) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
        for (int j = n + m; j < t.cols; ++j) {
            t.blocked[j] = 1;
        }
    }

    std::vector<double> cost(t.cols, 0.0);
    for (int j = 0; j < n; ++j) {
        cost[j] = lp.c[j];
    }
    t.price(cost);
    if (!t.optimize(result.pivots)) {
        result.status = LpStatus::unbounded;
        return result;
    }
    result.status = LpStatus::optimal;
    result.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n) {
            result.x[static_cast<std::size_t>(t.basis[i])] = std::max(0.0, t.rhs[i]);
        }
    }
    result.value = 0.0;
    for (int j = 0; j < n; ++j) {
        result.value += lp.c[j] * result.x[j];
    }
    return result;
}

} // namespace bulkrobust
