#include "pmdet/forms.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "pmdet/errors.hpp"

namespace pmdet {

namespace {

double eval_form_d(const AffineForm& f, const std::vector<double>& x) {
  double v = to_double(f.c);
  for (std::size_t i = 0; i < x.size(); ++i) v += to_double(f.a[i]) * x[i];
  return v;
}

// Determinant of a small complex matrix, by Gaussian elimination with
// partial pivoting.
Cplx cdet(std::vector<std::vector<Cplx>> m) {
  const int n = static_cast<int>(m.size());
  Cplx d(1.0);
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == Cplx(0.0)) return Cplx(0.0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      const Cplx f = m[r][c] / m[c][c];
      for (int c2 = c + 1; c2 < n; ++c2) m[r][c2] -= f * m[c][c2];
    }
  }
  return d;
}

}  // namespace

LogOneForm edge_one_form(const Arrangement& arr,
                         const std::vector<int>& support) {
  QMat rows;
  QVec rhs;
  for (int i : support) {
    rows.push_back(arr.form(i).a);
    rhs.push_back(-arr.form(i).c);
  }
  const AffineSpace sp = affine_solve(std::move(rows), std::move(rhs), arr.dim);
  if (!sp.nonempty) throw EdgeNotInLattice("empty intersection");
  // The support has to be maximal for the intersection to name a lattice
  // element; a partial support would silently drop terms of the one-form.
  std::vector<int> full;
  for (int i = 0; i < arr.size(); ++i) {
    if (eval_form(arr.form(i), sp.point) != 0) continue;
    bool tangent = true;
    for (const QVec& b : sp.basis)
      if (dot(arr.form(i).a, b) != 0) {
        tangent = false;
        break;
      }
    if (tangent) full.push_back(i);
  }
  if (full != support) throw EdgeNotInLattice("support is not the full one");
  LogOneForm w;
  for (int i : support) w.push_back({i, arr.weight(i)});
  return w;
}

NForm wedge_expand(const Arrangement& arr,
                   const std::vector<LogOneForm>& factors) {
  const int n = static_cast<int>(factors.size());
  std::map<std::vector<int>, NTerm> merged;
  std::vector<int> pick(n);

  std::function<void(int, Cplx)> rec = [&](int depth, Cplx c) {
    if (depth < n) {
      for (const LogTerm& term : factors[depth]) {
        pick[depth] = term.index;
        rec(depth + 1, c * term.coeff);
      }
      return;
    }
    std::vector<int> t(pick);
    int sgn = 1;
    for (int i = 1; i < n; ++i)
      for (int j = i; j > 0 && t[j - 1] > t[j]; --j) {
        std::swap(t[j - 1], t[j]);
        sgn = -sgn;
      }
    for (int i = 1; i < n; ++i)
      if (t[i - 1] == t[i]) return;  // df ^ df = 0
    auto it = merged.find(t);
    if (it == merged.end()) {
      QMat m;
      for (int i : t) m.push_back(arr.form(i).a);
      Q d = det(std::move(m));
      if (d == 0) return;  // dependent linear parts: identically zero
      it = merged.emplace(t, NTerm{t, Cplx(0.0), std::move(d)}).first;
    }
    it->second.coeff += sgn > 0 ? c : -c;
  };
  rec(0, Cplx(1.0));

  NForm out;
  for (auto& [t, term] : merged)
    if (term.coeff != Cplx(0.0)) out.terms.push_back(std::move(term));
  return out;
}

NForm basis_n_form(const Arrangement& arr, const std::vector<int>& base) {
  const std::vector<FlagEdge> flag = flag_of_base(arr, base);
  std::vector<LogOneForm> factors;
  for (int j = 0; j < arr.dim; ++j)
    factors.push_back(edge_one_form(arr, flag[j].support));
  return wedge_expand(arr, factors);
}

Cplx nform_coefficient(const Arrangement& arr, const NForm& phi,
                       const QVec& x) {
  Cplx total(0.0);
  for (const NTerm& term : phi.terms) {
    Q denom(1);
    for (int i : term.tuple) {
      const Q v = eval_form(arr.form(i), x);
      if (v == 0)
        throw PointOnHyperplane("hyperplane " + std::to_string(i));
      denom *= v;
    }
    total += term.coeff * to_double(Q(term.det / denom));
  }
  return total;
}

Cplx nform_coefficient(const Arrangement& arr, const NForm& phi,
                       const std::vector<double>& x) {
  Cplx total(0.0);
  for (const NTerm& term : phi.terms) {
    double denom = 1.0;
    for (int i : term.tuple) {
      const double v = eval_form_d(arr.form(i), x);
      if (v == 0.0)
        throw PointOnHyperplane("hyperplane " + std::to_string(i));
      denom *= v;
    }
    total += term.coeff * (to_double(term.det) / denom);
  }
  return total;
}

Cplx flag_coefficient(const Arrangement& arr, const std::vector<int>& base,
                      const QVec& x) {
  const std::vector<FlagEdge> flag = flag_of_base(arr, base);
  const int n = arr.dim;
  std::vector<std::vector<Cplx>> rows;
  for (int j = 0; j < n; ++j) {
    const LogOneForm w = edge_one_form(arr, flag[j].support);
    std::vector<Cplx> row(n, Cplx(0.0));
    for (const LogTerm& term : w) {
      const Q v = eval_form(arr.form(term.index), x);
      if (v == 0)
        throw PointOnHyperplane("hyperplane " + std::to_string(term.index));
      const Cplx scale = term.coeff / to_double(v);
      for (int c = 0; c < n; ++c)
        row[c] += scale * to_double(arr.form(term.index).a[c]);
    }
    rows.push_back(std::move(row));
  }
  return cdet(std::move(rows));
}

std::vector<NForm> phi_set(const Arrangement& arr) {
  std::vector<NForm> out;
  for (const std::vector<int>& b : beta_nbc_bases(arr))
    out.push_back(basis_n_form(arr, b));
  return out;
}

std::vector<NForm> phi_set_f0(const Arrangement& arr) {
  std::vector<NForm> out;
  for (const std::vector<int>& b : beta_nbc_bases_f0(arr))
    out.push_back(basis_n_form(arr, b));
  return out;
}

std::vector<double> branch_angles(const std::vector<int>& signs) {
  std::vector<double> theta(signs.size(), 0.0);
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] < 0) theta[i] = std::numbers::pi;
  return theta;
}

Cplx master_value(const Arrangement& arr, const std::vector<double>& theta,
                  const std::vector<double>& x) {
  Cplx expo(0.0);
  for (int i = 0; i < arr.size(); ++i) {
    const double v = eval_form_d(arr.form(i), x);
    if (v == 0.0) throw PointOnHyperplane("hyperplane " + std::to_string(i));
    expo += arr.weight(i) * Cplx(std::log(std::abs(v)), theta[i]);
  }
  return std::exp(expo);
}

Cplx master_value(const Arrangement& arr, const std::vector<double>& theta,
                  const QVec& x) {
  Cplx expo(0.0);
  for (int i = 0; i < arr.size(); ++i) {
    const Q v = eval_form(arr.form(i), x);
    if (v == 0) throw PointOnHyperplane("hyperplane " + std::to_string(i));
    expo += arr.weight(i) * Cplx(std::log(to_double(qabs(v))), theta[i]);
  }
  return std::exp(expo);
}

Cplx integrand_value(const Arrangement& arr, const std::vector<double>& theta,
                     const NForm& phi, const std::vector<double>& x,
                     bool with_f0) {
  Cplx v = master_value(arr, theta, x) * nform_coefficient(arr, phi, x);
  if (with_f0) {
    if (!arr.f0) throw Error("arrangement has no damping functional");
    v *= std::exp(-eval_form_d(*arr.f0, x));
  }
  return v;
}

Cplx integrand_value(const Arrangement& arr, const std::vector<double>& theta,
                     const NForm& phi, const QVec& x, bool with_f0) {
  Cplx v = master_value(arr, theta, x) * nform_coefficient(arr, phi, x);
  if (with_f0) {
    if (!arr.f0) throw Error("arrangement has no damping functional");
    v *= std::exp(-to_double(eval_form(*arr.f0, x)));
  }
  return v;
}

}  // namespace pmdet
