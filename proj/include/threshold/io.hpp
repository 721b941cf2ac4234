#pragma once

#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "threshold/cotree.hpp"
#include "threshold/diagonalize.hpp"
#include "threshold/errors.hpp"
#include "threshold/generators.hpp"
#include "threshold/oracle.hpp"
#include "threshold/scalar.hpp"
#include "threshold/search.hpp"
#include "threshold/verify.hpp"

namespace threshold {

using json = nlohmann::json;

/// Exact rounding to `significant` digits, printed like %g (no exponent for moderate magnitudes,
/// trailing zeros dropped).
inline std::string format_decimal(const Scalar& x, int significant = 12) {
  if (x.sign() == 0) return "0";
  const mpq_class mag = abs(x.raw());

  // e = floor(log10 |x|)
  long e = static_cast<long>(mpz_sizeinbase(mag.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(mag.get_den_mpz_t(), 10));
  auto pow10 = [](long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p);
  };
  while (mag >= pow10(e + 1)) ++e;
  while (mag < pow10(e)) --e;

  auto scaled_digits = [&](long exp10) {
    const mpq_class s = mag * pow10(significant - 1 - exp10);
    // floor(s + 1/2)
    return mpz_class((s.get_num() * 2 + s.get_den()) / (s.get_den() * 2));
  };
  mpz_class digits = scaled_digits(e);
  if (digits.get_str().size() > static_cast<std::size_t>(significant)) {
    ++e;
    digits = scaled_digits(e);
  }
  std::string d = digits.get_str();

  std::string body;
  if (e >= significant || e < -5) {
    std::string mant = d.substr(0, 1);
    std::string frac = d.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) mant += "." + frac;
    body = mant + "e" + (e < 0 ? "-" : "+") + (std::abs(e) < 10 ? "0" : "") + std::to_string(std::abs(e));
  } else if (e >= 0) {
    std::string int_part = d.substr(0, static_cast<std::size_t>(e + 1));
    std::string frac = d.substr(static_cast<std::size_t>(e + 1));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    body = frac.empty() ? int_part : int_part + "." + frac;
  } else {
    std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + d;
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    body = "0." + frac;
  }
  return x.sign() < 0 ? "-" + body : body;
}

/// Locale-independent %g-style rendering of a float with `significant` digits.
inline std::string format_float(long double v, int significant = 12) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(significant) << v;
  return os.str();
}

// ---- JSON ---------------------------------------------------------------------------------

inline json to_json(const Scalar& s) { return {{"num", s.numerator()}, {"den", s.denominator()}}; }

inline Scalar scalar_from_json(const json& j) {
  const mpz_class num(j.at("num").get<std::string>(), 10);
  const mpz_class den(j.at("den").get<std::string>(), 10);
  if (den == 0) throw Error("scalar JSON with zero denominator");
  return Scalar(mpq_class(num, den));
}

inline json to_json(const Cotree& c) { return {{"parts", std::vector<Part>(c.parts().begin(), c.parts().end())}}; }

inline Cotree cotree_from_json(const json& j) { return Cotree(j.at("parts").get<std::vector<Part>>()); }

inline json to_json(const CountTriple& t) {
  return {{"greater", t.greater}, {"equal", t.equal}, {"less", t.less}};
}

inline CountTriple count_triple_from_json(const json& j) {
  return {j.at("greater").get<std::int64_t>(), j.at("equal").get<std::int64_t>(), j.at("less").get<std::int64_t>()};
}

/// One trace step; values are rational strings ("p" or "p/q").
inline json to_json(const TraceStep& s) {
  return {{"depth", s.depth},
          {"subcase", std::string(subcase_tag(s.subcase))},
          {"batched", s.batched},
          {"alpha", s.alpha.to_string()},
          {"beta", s.beta.to_string()},
          {"d_k", s.d_k.to_string()},
          {"d_l", s.d_l.to_string()},
          {"both_removed", s.both_removed}};
}

inline json to_json(const GenLevel& l) {
  return {{"depth", l.depth},
          {"bound", to_json(l.bound)},
          {"chosen", l.chosen},
          {"remaining", to_json(l.remaining)},
          {"permanent", l.permanent ? to_json(*l.permanent) : json(nullptr)}};
}

inline GenLevel gen_level_from_json(const json& j) {
  GenLevel l;
  l.depth = j.at("depth").get<int>();
  l.bound = scalar_from_json(j.at("bound"));
  l.chosen = j.at("chosen").get<Part>();
  l.remaining = scalar_from_json(j.at("remaining"));
  if (!j.at("permanent").is_null()) l.permanent = scalar_from_json(j.at("permanent"));
  return l;
}

inline json trace_to_json(const GenTrace& t) {
  json arr = json::array();
  for (const auto& l : t) arr.push_back(to_json(l));
  return arr;
}

inline GenTrace gen_trace_from_json(const json& j) {
  GenTrace t;
  for (const auto& l : j) t.push_back(gen_level_from_json(l));
  return t;
}

inline json to_json(const Interval& iv) {
  return {{"side", iv.side == Interval::Side::right ? "right" : "left"}, {"bound", to_json(iv.bound)}};
}

inline Interval interval_from_json(const json& j) {
  const auto side = j.at("side").get<std::string>();
  Scalar bound = scalar_from_json(j.at("bound"));
  if (side == "right") return Interval::right(std::move(bound));
  if (side == "left") return Interval::left(std::move(bound));
  throw Error("unknown interval side '" + side + "'");
}

/// Timing and worker count are omitted when include_timing is false, which makes the output a
/// deterministic function of the inputs.
inline json to_json(const SearchReport& r, bool include_timing = true) {
  json ce = json::array();
  for (const auto& c : r.counterexamples) ce.push_back(to_json(c));
  json j = {{"base", to_json(r.base)},
            {"interval", to_json(r.interval)},
            {"lattice_size_product", std::to_string(r.lattice_size_product)},
            {"lattice_size", r.lattice_size},
            {"examined", r.examined},
            {"counterexamples", ce},
            {"base_free", r.base_free},
            {"complete", r.complete}};
  if (include_timing) {
    j["wall_seconds"] = r.wall_seconds;
    j["workers"] = r.workers;
  }
  return j;
}

inline SearchReport search_report_from_json(const json& j) {
  SearchReport r{cotree_from_json(j.at("base")), interval_from_json(j.at("interval"))};
  r.lattice_size_product = std::stoull(j.at("lattice_size_product").get<std::string>());
  r.lattice_size = j.at("lattice_size").get<std::int64_t>();
  r.examined = j.at("examined").get<std::int64_t>();
  for (const auto& c : j.at("counterexamples")) r.counterexamples.push_back(cotree_from_json(c));
  r.base_free = j.at("base_free").get<bool>();
  r.complete = j.at("complete").get<bool>();
  if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
  if (j.contains("workers")) r.workers = j.at("workers").get<int>();
  return r;
}

inline json to_json(const Spectrum& s) {
  json values = json::array();
  for (const long double v : s.values) values.push_back(format_float(v));
  return {{"eigenvalues", values}, {"error_bound", format_float(s.max_error_bound(), 3)}};
}

// ---- CSV and tables -----------------------------------------------------------------------

/// One eigenvalue per line, 12 significant digits.
inline void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  for (const long double v : s.values) os << format_float(v) << '\n';
}

inline void write_trace_csv(std::ostream& os, const GenTrace& t) {
  os << "depth,bound,chosen,remaining,permanent\n";
  for (const auto& l : t) {
    os << l.depth << ',' << l.bound.to_string() << ',' << l.chosen << ',' << l.remaining.to_string() << ','
       << (l.permanent ? l.permanent->to_string() : "") << '\n';
  }
}

inline void write_trace_table(std::ostream& os, const GenTrace& t) {
  const std::vector<std::string> head{"i", "bound", "a_i", "s_i", "p_i"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : t) {
    rows.push_back({std::to_string(l.depth), format_decimal(l.bound), std::to_string(l.chosen),
                    format_decimal(l.remaining), l.permanent ? format_decimal(*l.permanent) : "-"});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      os << std::string(width[c] - cells[c].size(), ' ') << cells[c];
    }
    os << '\n';
  };
  line(head);
  for (const auto& row : rows) line(row);
}

}  // namespace threshold
