#pragma once

// Closed-form example modules. Each entry carries its expected convergence
// polygon as a list of lines; the expected log R at rho is the minimum of
// the lines (the first is always the cap log R = rho).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicdm/diffmod.hpp"
#include "padicdm/parse.hpp"

namespace padicdm {

struct ExpectedLine {
  Rational slope;
  Rational intercept;
};

// How the expected values are known.
enum class Basis {
  none,           // no closed form (companion input)
  by_definition,  // immediate from the definitions
  closed_form,    // explicit solution and |n!| asymptotics
};

inline const char* to_string(Basis b) {
  switch (b) {
    case Basis::by_definition:
      return "by-definition";
    case Basis::closed_form:
      return "closed-form";
    case Basis::none:
      break;
  }
  return "none";
}

struct CatalogEntry {
  std::string name;
  std::map<std::string, std::string> params;  // normalized parameter values
  DiffModule module;
  std::vector<ExpectedLine> lines;  // empty when unknown
  bool robba = false;               // expected log R = rho everywhere
  std::string boundedness;          // expected classification at log R
  Basis basis = Basis::none;
  std::string note;

  bool has_expected() const { return !lines.empty(); }

  Rational expected_log_radius(const Rational& rho) const {
    if (lines.empty()) throw InvalidInput("catalog entry " + name + " has no closed-form radius");
    Rational best = lines.front().slope * rho + lines.front().intercept;
    for (const auto& l : lines) best = std::min<Rational>(best, l.slope * rho + l.intercept);
    return best;
  }
};

struct CatalogInfo {
  std::string name;
  std::string params;
  std::string description;
};

inline std::vector<CatalogInfo> catalog_list() {
  return {
      {"zero", "", "G = (0); log R = rho (Robba)"},
      {"exp", "alpha (default 1)", "G = (alpha); log R = min(rho, log pi + v_p(alpha))"},
      {"euler", "a (default 1/p, needs v_p(a) < 0)", "G = (a/x); log R = rho + log pi + v_p(a)"},
      {"companion", "q = q_1; ...; q_mu", "companion matrix of d^mu + q_1 d^(mu-1) + ... + q_mu"},
      {"pullback-exp", "h (default 1), alpha (default 1)",
       "h-fold Frobenius pullback of exp; solution exp(alpha x^(p^h))"},
  };
}

namespace detail {

inline Rational catalog_rational(const std::map<std::string, std::string>& params, const std::string& key,
                                 const Rational& fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  RationalFunction f = parse_rational_function(it->second).reduced();
  if (!(f.den() == LaurentPoly(1)) || f.num().span() > 1 || (!f.num().is_zero() && f.num().low() != 0))
    throw InvalidInput("parameter " + key + " must be a rational constant, got \"" + it->second + "\"");
  return f.num().coeff(0);
}

inline void check_keys(const std::string& name, const std::map<std::string, std::string>& params,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw InvalidInput("catalog entry " + name + " has no parameter \"" + k + "\"");
  }
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline RationalFunctionMatrix scalar_matrix(RationalFunction g) { return RationalFunctionMatrix::from_rows({{std::move(g)}}); }

}  // namespace detail

inline Interval catalog_default_interval(const std::string& name, long p,
                                         const std::map<std::string, std::string>& params = {}) {
  if (name == "exp") return Interval(Rational(0), Rational(2));
  if (name == "pullback-exp") {
    const Rational h = detail::catalog_rational(params, "h", Rational(1));
    if (h < 1 || h.get_den() != 1 || h > 8) throw InvalidInput("pullback-exp needs an integer h in [1, 8]");
    const Rational s = rational_pow(p, -h.get_num().get_si());
    return Interval(Rational(0), Rational(2 * s));
  }
  return Interval(Rational(-1), Rational(1));
}

inline CatalogEntry catalog_get(const std::string& name, long p_value, const std::map<std::string, std::string>& params = {},
                                std::optional<Interval> interval = std::nullopt) {
  const Prime p(p_value);
  const Interval I = interval ? *interval : catalog_default_interval(name, p, params);

  if (name == "zero") {
    detail::check_keys(name, params, {});
    return CatalogEntry{name, {}, DiffModule(p, RationalFunctionMatrix(1, 1), I), {{Rational(1), Rational(0)}},
                        true, "bounded-plateau", Basis::by_definition, "trivial connection, solution 1"};
  }
  if (name == "exp") {
    detail::check_keys(name, params, {"alpha"});
    const Rational alpha = detail::catalog_rational(params, "alpha", Rational(1));
    if (alpha == 0) throw InvalidInput("exp needs alpha != 0");
    const Rational c = p.log_pi() + valuation(alpha, p);
    return CatalogEntry{name,
                        {{"alpha", alpha.get_str()}},
                        DiffModule(p, detail::scalar_matrix(RationalFunction(alpha)), I),
                        {{Rational(1), Rational(0)}, {Rational(0), c}},
                        false,
                        "bounded-plateau",
                        Basis::closed_form,
                        "solution exp(alpha x)"};
  }
  if (name == "euler") {
    detail::check_keys(name, params, {"a"});
    const Rational a = detail::catalog_rational(params, "a", make_rational(1, p));
    if (a == 0 || valuation(a, p) >= 0) throw InvalidInput("euler needs |a|_p > 1");
    return CatalogEntry{name,
                        {{"a", a.get_str()}},
                        DiffModule(p, detail::scalar_matrix(RationalFunction(LaurentPoly::monomial(a, -1))), I),
                        {{Rational(1), Rational(0)}, {Rational(1), Rational(p.log_pi() + valuation(a, p))}},
                        false,
                        "bounded-plateau",
                        Basis::closed_form,
                        "solution x^a"};
  }
  if (name == "companion") {
    detail::check_keys(name, params, {"q"});
    auto it = params.find("q");
    if (it == params.end()) throw InvalidInput("companion needs q = q_1; ...; q_mu");
    std::vector<RationalFunction> q;
    for (const auto& s : detail::split_list(it->second, ';')) q.push_back(parse_rational_function(s).reduced());
    std::string norm;
    for (std::size_t i = 0; i < q.size(); ++i) norm += (i ? "; " : "") + to_string(q[i]);
    return CatalogEntry{name, {{"q", norm}}, companion_of(p, q, I), {}, false, "", Basis::none, "user operator"};
  }
  if (name == "pullback-exp") {
    detail::check_keys(name, params, {"h", "alpha"});
    const Rational hr = detail::catalog_rational(params, "h", Rational(1));
    if (hr < 1 || hr.get_den() != 1 || hr > 8) throw InvalidInput("pullback-exp needs an integer h in [1, 8]");
    const Rational alpha = detail::catalog_rational(params, "alpha", Rational(1));
    if (alpha == 0) throw InvalidInput("pullback-exp needs alpha != 0");
    const auto h = static_cast<unsigned>(hr.get_num().get_ui());
    // exp(alpha (t + y)^q) = prod_k exp(alpha C(q, k) t^(q-k) y^k), q = p^h;
    // the k-th factor converges for log|y| < (log pi + v(alpha C(q,k)) - (q-k) rho) / k.
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p.value()), h);
    if (q > 1024) throw InvalidInput("pullback-exp needs p^h <= 1024");
    std::vector<ExpectedLine> lines{{Rational(1), Rational(0)}};
    Integer binom;
    for (unsigned long k = 1; k <= q.get_ui(); ++k) {
      mpz_bin_uiui(binom.get_mpz_t(), q.get_ui(), k);
      const long kk = static_cast<long>(k);
      lines.push_back({make_rational(-(q.get_si() - kk), kk),
                       Rational((p.log_pi() + valuation(alpha, p) + valuation(binom, p)) / kk)});
    }
    DiffModule base(p, detail::scalar_matrix(RationalFunction(alpha)), I.scaled(Rational(q)));
    DiffModule M = frobenius_pullback(base, h);
    return CatalogEntry{name,
                        {{"h", std::to_string(h)}, {"alpha", alpha.get_str()}},
                        M.with_interval(I),
                        std::move(lines),
                        false,
                        "bounded-plateau",
                        Basis::closed_form,
                        "solution exp(alpha x^(p^h))"};
  }
  throw InvalidInput("unknown catalog entry \"" + name + "\"");
}

}  // namespace padicdm
