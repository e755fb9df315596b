#include "pmdet/closedform.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pmdet/errors.hpp"
#include "pmdet/forms.hpp"
#include "pmdet/gamma.hpp"

namespace pmdet {

namespace {

std::string edge_name(const BetaFactor& f) {
  std::string s = "{";
  for (std::size_t k = 0; k < f.support.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(f.support[k]);
  }
  if (f.at_infinity) {
    if (!f.support.empty()) s += ",";
    s += "inf";
  }
  return s + "}";
}

Cplx gamma_or_throw(const BetaFactor& f) {
  if (near_gamma_pole(f.arg))
    throw GammaPole("Gamma argument " + std::to_string(f.arg.real()) +
                    " at edge " + edge_name(f));
  return cgamma(f.arg);
}

BetaResult beta_impl(const Arrangement& arr) {
  const ProjArrangement pa = projectivize(arr);
  BetaResult out;
  Cplx num(1.0), den(1.0);
  for (const ProjEdge& e : pa.lplus) {
    const EdgeVol v = edge_volume(arr, e);
    if (v.vol == 0) continue;
    BetaFactor f{false, false, e.support, e.weight + Cplx(1.0), v.vol};
    const Cplx g = gamma_or_throw(f);
    for (int k = 0; k < v.vol; ++k) num *= g;
    out.factors.push_back(std::move(f));
  }
  for (const ProjEdge& e : pa.lminus) {
    const EdgeVol v = edge_volume(arr, e);
    if (v.vol == 0) continue;
    BetaFactor f{true, true, e.support, -e.weight + Cplx(1.0), v.vol};
    const Cplx g = gamma_or_throw(f);
    for (int k = 0; k < v.vol; ++k) den *= g;
    out.factors.push_back(std::move(f));
  }
  out.value = num / den;
  return out;
}

// indices of the truncated arrangement back in the original numbering; the
// truncating wall itself (index 0 there) is left out
std::vector<int> original_ids(const std::vector<int>& support) {
  std::vector<int> out;
  for (int i : support)
    if (i > 0) out.push_back(i - 1);
  return out;
}

// The relative beta function arises as the level of a truncating wall
// {f0 = t} goes to infinity, and the discrete volumes that survive the
// limit are those of the truncated arrangement: the wall cuts every affine
// section, and at infinity it enlarges the localizations of the edges lying
// in the closure of {f0 = 0} (it shares their direction).  The edge weights
// are level-independent: affine edges never contain the wall, and inside
// that closure the wall's weight cancels against the weight at infinity.
BetaResult beta_rel_impl(const Arrangement& arr) {
  const Arrangement at = truncate(arr, default_truncation_level(arr));
  const ProjArrangement pa = projectivize(at);
  BetaResult out;
  Cplx num(1.0), den(1.0);
  for (const ProjEdge& e : pa.lplus) {
    if (!e.support.empty() && e.support.front() == 0) continue;  // the wall
    const EdgeVol v = edge_volume(at, e);
    if (v.vol == 0) continue;
    BetaFactor f{false, false, original_ids(e.support), e.weight + Cplx(1.0),
                 v.vol};
    const Cplx g = gamma_or_throw(f);
    for (int k = 0; k < v.vol; ++k) num *= g;
    out.factors.push_back(std::move(f));
  }
  for (const ProjEdge& e : pa.lminus) {
    if (!edge_in_h0(at, e)) continue;
    const EdgeVol v = edge_volume(at, e);
    if (v.vol == 0) continue;
    BetaFactor f{true, true, original_ids(e.support), -e.weight + Cplx(1.0),
                 v.vol};
    const Cplx g = gamma_or_throw(f);
    for (int k = 0; k < v.vol; ++k) den *= g;
    out.factors.push_back(std::move(f));
  }
  out.value = num / den;
  return out;
}

// Rows of pts where |f| is largest, with the maximum modulus.
QMat abs_argmax(const AffineForm& f, const QMat& pts, Q* max_out) {
  QMat best;
  Q m(-1);
  for (const QVec& v : pts) {
    const Q a = qabs(eval_form(f, v));
    if (a > m) {
      m = a;
      best.clear();
    }
    if (a == m) best.push_back(v);
  }
  if (max_out) *max_out = m;
  return best;
}

}  // namespace

BetaResult beta_function(const Arrangement& arr) {
  return beta_impl(arr);
}

BetaResult beta_function_relative(const Arrangement& arr) {
  if (!arr.f0) throw ConstantF0("no f0 given");
  return beta_rel_impl(arr);
}

QMat external_support(const Arrangement& arr, const Chamber& ch, int i) {
  for (const QVec& r : ch.rays)
    if (dot(arr.form(i).a, r) != 0)
      throw Unbounded("hyperplane " + std::to_string(i) +
                      " grows on the chamber");
  return abs_argmax(arr.form(i), ch.vertices, nullptr);
}

SupportFace support_face_f0(const Arrangement& arr, const Chamber& ch) {
  if (ch.kind == Chamber::Kind::kOtherUnbounded)
    throw UnboundedBelow("chamber is neither bounded nor growing");
  if (!arr.f0) throw ConstantF0("no f0 given");
  SupportFace out;
  bool first = true;
  for (const QVec& v : ch.vertices) {
    const Q val = eval_form(*arr.f0, v);
    if (first || val < out.min) {
      out.min = val;
      out.points.clear();
      first = false;
    }
    if (val == out.min) out.points.push_back(v);
  }
  return out;
}

CriticalRecord critical_value(const Arrangement& arr, const Chamber& ch,
                              int i, const std::vector<double>& theta,
                              bool with_f0) {
  CriticalRecord rec;
  rec.hyperplane = i;
  bool bounded = true;
  for (const QVec& r : ch.rays)
    if (dot(arr.form(i).a, r) != 0) {
      bounded = false;
      break;
    }
  Q m;
  if (bounded) {
    rec.support = abs_argmax(arr.form(i), ch.vertices, &m);
  } else {
    if (!with_f0)
      throw Unbounded("hyperplane " + std::to_string(i) +
                      " grows on the chamber");
    // |f_i| grows along the chamber; its place is taken by the direction
    // ratio f_i/f_0 on the trace at infinity, carrying the same argument.
    const TraceChart tc = trace_at_infinity(arr);
    const TraceFace tf = trace_of_chamber(arr, tc, ch);
    if (tf.signs[i] != ch.signs[i])
      throw Error("trace sign differs from the chamber sign for hyperplane " +
                  std::to_string(i));
    rec.trace_path = true;
    rec.support = abs_argmax(tc.h[i], tf.points, &m);
  }
  rec.value =
      std::exp(arr.weight(i) * Cplx(std::log(to_double(m)), theta[i]));
  return rec;
}

CriticalProduct critical_product(
    const Arrangement& arr, const std::vector<Chamber>& chambers,
    bool with_f0, const std::vector<std::vector<double>>& theta_override) {
  CriticalProduct out;
  out.value = Cplx(1.0);
  for (std::size_t j = 0; j < chambers.size(); ++j) {
    const Chamber& ch = chambers[j];
    const bool eligible = with_f0
                              ? ch.kind != Chamber::Kind::kOtherUnbounded
                              : ch.kind == Chamber::Kind::kBounded;
    if (!eligible) continue;
    const std::vector<double> theta =
        (j < theta_override.size() && !theta_override[j].empty())
            ? theta_override[j]
            : branch_angles(ch.signs);
    if (with_f0) {
      SupportFace sf = support_face_f0(arr, ch);
      CriticalRecord rec;
      rec.chamber = static_cast<int>(j);
      rec.support = std::move(sf.points);
      rec.value = std::exp(-to_double(sf.min));
      out.value *= rec.value;
      out.records.push_back(std::move(rec));
    }
    for (int i = 0; i < arr.size(); ++i) {
      CriticalRecord rec = critical_value(arr, ch, i, theta, with_f0);
      rec.chamber = static_cast<int>(j);
      out.value *= rec.value;
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace pmdet
