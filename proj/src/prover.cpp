#include "entrolab/prover.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace entrolab {

namespace {

// Phase-one revised simplex for the feasibility system
//     sum_j lambda_j * g_j = alpha,   lambda >= 0
// with one artificial variable per class row. Rows are sign-flipped so the
// right-hand side is non-negative; artificials form the initial basis and are
// barred from re-entering once they leave. Bland's least-index rule on the
// lambda columns guarantees termination. Columns are priced sparsely against
// the maintained basis inverse, so large constraint families stay cheap.
struct Simplex {
    int rows;      // number of classes k
    int n_lambda;  // number of constraint columns m
    std::vector<std::vector<std::pair<int, Rational>>> cols;  // sign-flipped sparse columns
    std::vector<Rational> b;                                  // flipped rhs, >= 0
    std::vector<std::vector<Rational>> binv;                  // dense basis inverse
    std::vector<Rational> xb;                                 // basic solution values
    std::vector<int> basis;                                   // basic variable per row (>= m: artificial)
    std::vector<bool> in_basis;                               // per lambda column
    std::vector<int> sigma;                                   // original row signs

    Simplex(const std::vector<Constraint>& cons, int k, const Target& target)
        : rows(k), n_lambda(static_cast<int>(cons.size())) {
        b.assign(rows, Rational(0));
        for (const auto& [idx, c] : target.coeffs) {
            if (idx < 0 || idx >= rows) throw std::invalid_argument("prove: target class index out of range");
            b[idx] += c;
        }
        sigma.assign(rows, 1);
        for (int i = 0; i < rows; ++i)
            if (b[i].sign() < 0) {
                sigma[i] = -1;
                b[i] = -b[i];
            }
        cols.resize(n_lambda);
        for (int j = 0; j < n_lambda; ++j) {
            cols[j].reserve(cons[j].coeffs.size());
            for (const auto& [idx, c] : cons[j].coeffs) {
                if (idx < 0 || idx >= rows)
                    throw std::invalid_argument("prove: constraint class index out of range");
                cols[j].emplace_back(idx, sigma[idx] == 1 ? c : -c);
            }
        }
        binv.assign(rows, std::vector<Rational>(rows, Rational(0)));
        for (int i = 0; i < rows; ++i) binv[i][i] = Rational(1);
        xb = b;
        basis.resize(rows);
        for (int i = 0; i < rows; ++i) basis[i] = n_lambda + i;
        in_basis.assign(n_lambda, false);
    }

    Rational objective() const {
        Rational s(0);
        for (int r = 0; r < rows; ++r)
            if (basis[r] >= n_lambda) s += xb[r];
        return s;
    }

    // y = cB^T B^{-1} with unit costs on basic artificials.
    std::vector<Rational> price_vector() const {
        std::vector<Rational> y(rows, Rational(0));
        for (int r = 0; r < rows; ++r) {
            if (basis[r] < n_lambda) continue;
            for (int i = 0; i < rows; ++i)
                if (!binv[r][i].is_zero()) y[i] += binv[r][i];
        }
        return y;
    }

    // Minimizes the artificial sum. Returns true when it reaches zero.
    bool solve() {
        for (;;) {
            if (objective().is_zero()) return true;
            std::vector<Rational> y = price_vector();
            int enter = -1;
            for (int j = 0; j < n_lambda; ++j) {
                if (in_basis[j]) continue;
                Rational rc(0);
                for (const auto& [i, c] : cols[j])
                    if (!y[i].is_zero()) rc -= y[i] * c;
                if (rc.sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return false;

            // direction d = B^{-1} A_enter
            std::vector<Rational> d(rows, Rational(0));
            for (const auto& [i, c] : cols[enter])
                for (int r = 0; r < rows; ++r)
                    if (!binv[r][i].is_zero()) d[r] += binv[r][i] * c;

            int leave = -1;
            Rational best_ratio;
            for (int r = 0; r < rows; ++r) {
                if (d[r].sign() <= 0) continue;
                Rational ratio = xb[r] / d[r];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw std::logic_error("prove: phase-one column unbounded, tableau corrupt");

            // eta update of the basis inverse and the basic solution
            Rational piv = d[leave];
            for (int i = 0; i < rows; ++i)
                if (!binv[leave][i].is_zero()) binv[leave][i] /= piv;
            xb[leave] /= piv;
            for (int r = 0; r < rows; ++r) {
                if (r == leave || d[r].is_zero()) continue;
                for (int i = 0; i < rows; ++i)
                    if (!binv[leave][i].is_zero()) binv[r][i] -= d[r] * binv[leave][i];
                if (!xb[leave].is_zero()) xb[r] -= d[r] * xb[leave];
            }
            if (basis[leave] < n_lambda) in_basis[basis[leave]] = false;
            basis[leave] = enter;
            in_basis[enter] = true;
        }
    }

    Certificate extract_certificate() const {
        Certificate cert;
        for (int r = 0; r < rows; ++r)
            if (basis[r] < n_lambda && xb[r].sign() > 0) cert.multipliers.emplace_back(basis[r], xb[r]);
        std::sort(cert.multipliers.begin(), cert.multipliers.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return cert;
    }

    // Farkas vector from the final prices: v satisfies g_j . v >= 0 for all
    // constraints and alpha . v < 0.
    Witness extract_witness() const {
        std::vector<Rational> y = price_vector();
        Witness w;
        w.values.assign(rows, Rational(0));
        for (int i = 0; i < rows; ++i) w.values[i] = sigma[i] == 1 ? -y[i] : y[i];
        return w;
    }
};

Rational evaluate_form(const LinearForm& form, const std::vector<Rational>& values) {
    Rational s(0);
    for (const auto& [idx, c] : form) s += c * values[idx];
    return s;
}

}  // namespace

ProveResult prove(const std::vector<Constraint>& constraints, int n_classes, const Target& target,
                  const ProverLimits& limits) {
    if (static_cast<int>(constraints.size()) > limits.max_constraints)
        throw std::invalid_argument("prove: universe exceeds the constraint cap (" +
                                    std::to_string(limits.max_constraints) + ")");
    if (n_classes > limits.max_classes)
        throw std::invalid_argument("prove: universe exceeds the class cap (" +
                                    std::to_string(limits.max_classes) + ")");
    if (n_classes <= 0) throw std::invalid_argument("prove: universe has no classes");

    Simplex lp(constraints, n_classes, target);
    ProveResult result;
    if (lp.solve()) {
        result.derivable = true;
        result.certificate = lp.extract_certificate();
        if (!verify_certificate(constraints, target, result.certificate))
            throw std::logic_error("prove: certificate failed exact re-verification");
    } else {
        result.derivable = false;
        result.witness = lp.extract_witness();
        if (!verify_witness(constraints, target, result.witness))
            throw std::logic_error("prove: witness failed exact verification");
    }
    return result;
}

ProveResult prove(const RegionUniverse& u, const Target& target, const ProverLimits& limits) {
    return prove(generate_constraints(u), static_cast<int>(u.classes.size()), target, limits);
}

bool verify_certificate(const std::vector<Constraint>& constraints, const Target& target,
                        const Certificate& cert) {
    LinearForm sum;
    for (const auto& [idx, lambda] : cert.multipliers) {
        if (idx < 0 || idx >= static_cast<int>(constraints.size())) return false;
        if (lambda.sign() <= 0) return false;
        for (const auto& [cls, c] : constraints[idx].coeffs) sum.emplace_back(cls, lambda * c);
    }
    return normalize_form(std::move(sum)) == normalize_form(target.coeffs);
}

bool verify_witness(const std::vector<Constraint>& constraints, const Target& target,
                    const Witness& witness) {
    for (const Constraint& g : constraints)
        if (evaluate_form(g.coeffs, witness.values).sign() < 0) return false;
    return evaluate_form(target.coeffs, witness.values).sign() < 0;
}

std::string certificate_pretty(const std::vector<Constraint>& constraints, const Target& target,
                               const Certificate& cert, const std::vector<std::string>& class_names) {
    std::ostringstream os;
    os << "target: " << form_to_string(target.coeffs, class_names) << " >= 0\n";
    if (cert.multipliers.empty()) {
        os << "  (zero target, nothing to combine)\n";
        return os.str();
    }
    std::map<Constraint::Kind, std::vector<std::pair<int, Rational>>> by_kind;
    for (const auto& entry : cert.multipliers) by_kind[constraints[entry.first].kind].push_back(entry);
    for (const auto& [kind, entries] : by_kind) {
        os << to_string(kind) << ":\n";
        for (const auto& [idx, lambda] : entries) {
            os << "  " << lambda.str() << " * [" << form_to_string(constraints[idx].coeffs, class_names)
               << " >= 0]";
            if (!constraints[idx].provenance.empty()) os << "   (" << constraints[idx].provenance << ")";
            os << "\n";
        }
    }
    return os.str();
}

ScanReport scan(const RegionUniverse& u, const std::vector<Constraint>& constraints,
                const std::vector<std::pair<int, int>>& pairs) {
    ScanReport report;
    const int k = static_cast<int>(u.classes.size());
    for (const auto& [a, b] : pairs) {
        ScanPairResult r;
        r.a = a;
        r.b = b;
        r.derivable = prove(constraints, k, target_mean_monotone(a, b, u)).derivable;
        report.pairs.push_back(r);
    }
    if (!u.is_abstract) {
        for (int cls = 0; cls < k; ++cls) {
            if (u.classes[cls].key.rep.volume() < 2) continue;
            ScanAverageResult r;
            r.figure = cls;
            try {
                Target t = target_average_subfigures(cls, u);
                r.evaluable = true;
                r.derivable = prove(constraints, k, t).derivable;
            } catch (const std::runtime_error&) {
                r.evaluable = false;
            }
            report.averages.push_back(r);
        }
    }
    return report;
}

}  // namespace entrolab
