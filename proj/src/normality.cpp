#include "thetanorm/normality.hpp"

#include <stdexcept>

namespace thetanorm {

Eigen::MatrixXcd assemble_matrix(ThetaEvaluator& ev, const PolarizationType& D,
                                 const RationalVector& w) {
  if (ev.point().g() != D.g()) throw std::domain_error("assemble_matrix: dimension mismatch");
  if (static_cast<int>(w.size()) != D.g())
    throw std::domain_error("assemble_matrix: w has wrong dimension");
  IndexSets s = index_sets(D);
  RationalVector half_w = w.scaled(Rational(1, 2));
  Eigen::MatrixXcd M(s.I.size(), s.J.size());
  for (std::size_t r = 0; r < s.I.size(); ++r)
    for (std::size_t c = 0; c < s.J.size(); ++c)
      M(r, c) = ev.theta_null(s.I[r] + s.J[c] - half_w);
  return M;
}

bool TwoNormalResult::all_full() const {
  for (const auto& r : reports)
    if (r.status != RankStatus::full) return false;
  return !reports.empty();
}

TwoNormalResult is_two_normal(ThetaEvaluator& ev, const PolarizationType& D,
                              const RankTolerances& tols) {
  IndexSets s = index_sets(D);
  const int target = static_cast<int>(two_pow(D.g()));
  TwoNormalResult res;
  bool any_deficient = false;
  for (std::size_t wi = 0; wi < s.Iprime.size(); ++wi) {
    Eigen::MatrixXcd M = assemble_matrix(ev, D, s.Iprime[wi]);
    RankReport rep = numeric_rank(M, target, tols);
    rep.w = s.Iprime[wi];
    if (rep.status == RankStatus::ambiguous) res.ambiguous_w.push_back(static_cast<int>(wi));
    if (rep.status == RankStatus::deficient) any_deficient = true;
    res.reports.push_back(std::move(rep));
  }
  if (any_deficient)
    res.value = false;
  else if (res.ambiguous_w.empty())
    res.value = true;  // every report full
  else
    res.value = std::nullopt;
  return res;
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::never_normally_generated: return "never_normally_generated";
    case Conclusion::normally_generated_generic_evidence:
      return "normally_generated_generic_evidence";
    case Conclusion::two_normal_at_point: return "two_normal_at_point";
    case Conclusion::not_two_normal_at_point: return "not_two_normal_at_point";
    case Conclusion::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Verdict verdict(const PolarizationType& D, ThetaEvaluator* ev, const RankTolerances& tols,
                bool force_numeric) {
  Verdict v;
  v.type = D;
  const bool nec = necessary_condition(D);
  const bool f1 = fail1_predicate(D);
  const bool f2 = fail2_predicate(D);
  const bool iy = iyer_bound(D);

  if (!nec) v.reasons.push_back("necessary_condition");
  if (f1) v.reasons.push_back("fail1");
  if (f2) v.reasons.push_back("fail2");
  if (iy) v.reasons.push_back("iyer_bound");

  if (f1 && D.d == std::vector<int>{1, 2, 4, 4})
    v.notes.push_back(
        "fail1 applies to (1,2,4,4); corollary-style tabulations sometimes omit this type");

  bool decided = false;
  if (!nec) {
    v.conclusion = Conclusion::never_normally_generated;
    v.notes.push_back("h0 = " + std::to_string(D.h0()) + " is below 2^(g+1)-1 = " +
                      std::to_string(two_pow(D.g() + 1) - 1));
    decided = true;
  } else if (f1 || f2) {
    v.conclusion = Conclusion::never_normally_generated;
    decided = true;
  } else if (iy) {
    v.conclusion = Conclusion::normally_generated_generic_evidence;
    v.notes.push_back("h0 = " + std::to_string(D.h0()) + " exceeds 2^g * g! = " +
                      std::to_string(two_pow(D.g()) * factorial(D.g())) +
                      "; conclusion assumes A simple (not verified here)");
    decided = true;
  }

  if (!decided || force_numeric) {
    if (!ev) {
      if (decided) return v;  // nothing forced without a period point
      throw std::invalid_argument("verdict: numeric case requires a period point");
    }
    TwoNormalResult tn = is_two_normal(*ev, D, tols);
    v.reports = tn.reports;
    std::string numeric_reason;
    if (!tn.value.has_value()) {
      numeric_reason = "numeric_ambiguous";
      for (int wi : tn.ambiguous_w)
        v.notes.push_back("ambiguous rank certificate at w = (" +
                          v.reports[wi].w.str() +
                          "); re-run with tighter --series-tol or another period point");
    } else if (*tn.value) {
      numeric_reason = "numeric_full";
    } else {
      numeric_reason = "numeric_deficient";
    }
    v.reasons.push_back(numeric_reason);
    if (!decided) {
      if (!tn.value.has_value())
        v.conclusion = Conclusion::indeterminate;
      else
        v.conclusion = *tn.value ? Conclusion::two_normal_at_point
                                 : Conclusion::not_two_normal_at_point;
    } else if (decided && force_numeric) {
      v.notes.push_back("numeric certificate recorded alongside the predicate decision");
    }
  }
  return v;
}

}  // namespace thetanorm
