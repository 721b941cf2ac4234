#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "threshold/threshold.hpp"

namespace threshold {

inline constexpr const char* kCliGrammar = R"(usage: threshold_cli [--format human|json|csv] <command> ...

  convert <cotree | bits>                   T(2,3,4) <-> 111100011 / "1^4 0^3 1^2"
  diag <cotree> --at A [--diagonal] [--trace]
  inertia <cotree>
  theta <cotree> --side plus|minus [--tol T]
  rfi --n N --r R [--choices a1,...,ar]
  lfi --m M --r R [--choices a1,...,ar]
  check <cotree> (--right N | --left M)
  search <cotree> (--right N | --left M) [--workers W]
  oracle <cotree> [--cap C]

cotree : T(a1,...,ar) with a_i >= 1 and a_r >= 2
number : decimal literal (4.8, -3.3, 1e-9) or rational p/q, parsed exactly
THRESHOLD_WORKERS sets the default worker count for search.
)";

namespace detail {

enum class Format { human, json, csv };

struct UsageError : Error {
  using Error::Error;
};

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline Scalar number_arg(const std::string& text, const char* name) {
  try {
    return Scalar::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

inline Cotree cotree_arg(const std::vector<std::string>& words) {
  if (words.empty()) throw UsageError("missing cotree argument");
  try {
    return parse_cotree(join_words(words));
  } catch (const ParseError& e) {
    throw UsageError(std::string("cotree: ") + e.what());
  }
}

inline std::vector<Part> choices_arg(const std::string& text) {
  std::vector<Part> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--choices: '" + item + "' is not an integer");
    }
  }
  return out;
}

inline int default_workers() {
  if (const char* env = std::getenv("THRESHOLD_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::logic_error&) {
    }
    throw UsageError(std::string("THRESHOLD_WORKERS='") + env + "' is not a positive integer");
  }
  return 1;
}

inline void print_generated(std::ostream& out, Format fmt, const char* param, const Scalar& value, int r,
                            const Generated& g) {
  switch (fmt) {
    case Format::json:
      out << json{{"cotree", to_json(g.cotree)}, {param, to_json(value)}, {"r", r}, {"trace", trace_to_json(g.trace)}}
                 .dump()
          << '\n';
      break;
    case Format::csv:
      write_trace_csv(out, g.trace);
      break;
    case Format::human:
      out << g.cotree.to_string() << '\n';
      write_trace_table(out, g.trace);
      break;
  }
}

}  // namespace detail

/// Runs one command. args excludes the program name. Returns 0 on success, 1 on domain errors
/// and 2 on usage errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using detail::Format;

  CLI::App app{"Eigenvalue location for threshold graphs", "threshold_cli"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "human";
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"human", "json", "csv"}));

  std::vector<std::string> input;
  std::string at, tol = "1e-9", side, n_text, m_text, right, left, choices;
  int r = 0;
  int workers = 0;
  std::size_t cap = kDefaultOracleCap;
  bool show_diagonal = false, show_trace = false;

  auto* convert = app.add_subcommand("convert", "binary sequence <-> cotree");
  convert->add_option("input", input, "T(...) or a bit sequence")->required();

  auto* diag = app.add_subcommand("diag", "count triple relative to A");
  diag->add_option("cotree", input)->required();
  diag->add_option("--at", at, "reference value A")->required();
  diag->add_flag("--diagonal", show_diagonal, "print the diagonal of Diagonalize(T, -A)");
  diag->add_flag("--trace", show_trace, "print every reduction step");

  auto* inertia = app.add_subcommand("inertia", "closed-form inertia, mult(-1) and M+");
  inertia->add_option("cotree", input)->required();

  auto* theta = app.add_subcommand("theta", "theta+ or theta- by bisection");
  theta->add_option("cotree", input)->required();
  theta->add_option("--side", side)->required()->check(CLI::IsMember({"plus", "minus"}));
  theta->add_option("--tol", tol, "absolute tolerance");

  auto* rfi = app.add_subcommand("rfi", "generate a (0,N]-free threshold graph");
  rfi->add_option("--n", n_text, "N > 0")->required();
  rfi->add_option("--r", r, "depth")->required();
  rfi->add_option("--choices", choices, "explicit parts a_1,...,a_r");

  auto* lfi = app.add_subcommand("lfi", "generate a [M,-1)-free threshold graph");
  lfi->add_option("--m", m_text, "M < -1")->required();
  lfi->add_option("--r", r, "depth")->required();
  lfi->add_option("--choices", choices, "explicit parts a_1,...,a_r");

  auto* check = app.add_subcommand("check", "freeness on (0,N] or [M,-1)");
  check->add_option("cotree", input)->required();
  auto* check_right = check->add_option("--right", right, "N > 0");
  auto* check_left = check->add_option("--left", left, "M < -1");
  check_right->excludes(check_left);

  auto* search = app.add_subcommand("search", "exhaustive minimality search below a cotree");
  search->add_option("cotree", input)->required();
  auto* search_right = search->add_option("--right", right, "N > 0");
  auto* search_left = search->add_option("--left", left, "M < -1");
  search_right->excludes(search_left);
  search->add_option("--workers", workers, "worker threads (default $THRESHOLD_WORKERS or 1)")
      ->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "dense eigensolver spectrum");
  oracle->add_option("cotree", input)->required();
  oracle->add_option("--cap", cap, "largest n accepted");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << kCliGrammar;
    return 2;
  }

  if ((check->parsed() || search->parsed()) && right.empty() && left.empty()) {
    err << "error: one of --right or --left is required\n\n" << kCliGrammar;
    return 2;
  }

  const Format fmt = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::human;

  try {
    if (convert->parsed()) {
      const std::string text = detail::join_words(input);
      const bool is_cotree = text.find('T') != std::string::npos;
      Cotree c = is_cotree ? detail::cotree_arg(input) : Cotree{2};
      if (!is_cotree) {
        try {
          c = binary_to_cotree(parse_binary(text));
        } catch (const ParseError& e) {
          throw detail::UsageError(std::string("binary sequence: ") + e.what());
        }
      }
      const BinarySequence b = cotree_to_binary(c);
      if (fmt == Format::json) {
        out << json{{"cotree", to_json(c)}, {"bits", b.to_string()}, {"run_length", b.to_run_length()}}.dump() << '\n';
      } else if (fmt == Format::csv) {
        out << "cotree,bits,run_length\n\"" << c.to_string() << "\"," << b.to_string() << ',' << b.to_run_length()
            << '\n';
      } else {
        out << (is_cotree ? b.to_string() + "\n" + b.to_run_length() : c.to_string()) << '\n';
      }
      return 0;
    }

    if (diag->parsed()) {
      const Cotree c = detail::cotree_arg(input);
      const Scalar a = detail::number_arg(at, "at");
      const DiagOutcome d = diagonalize_full(c, -a, show_trace);
      if (fmt == Format::json) {
        json j{{"cotree", to_json(c)}, {"at", to_json(a)}, {"counts", to_json(d.counts)}};
        if (show_diagonal) {
          json diagv = json::array();
          for (const auto& v : d.diagonal) diagv.push_back(to_json(v));
          j["diagonal"] = diagv;
        }
        out << j.dump() << '\n';
        if (show_trace)
          for (const auto& s : d.trace) out << to_json(s).dump() << '\n';
      } else if (fmt == Format::csv) {
        out << "greater,equal,less\n" << d.counts.greater << ',' << d.counts.equal << ',' << d.counts.less << '\n';
      } else {
        out << "greater " << d.counts.greater << "  equal " << d.counts.equal << "  less " << d.counts.less << '\n';
        if (show_diagonal) {
          out << "diagonal";
          for (const auto& v : d.diagonal) out << ' ' << v;
          out << '\n';
        }
        if (show_trace) {
          for (const auto& s : d.trace) {
            out << "depth " << s.depth << ' ' << subcase_tag(s.subcase) << (s.batched ? " (leaves)" : "")
                << "  alpha=" << s.alpha << " beta=" << s.beta << " d_k=" << s.d_k << " d_l=" << s.d_l
                << (s.both_removed ? " [both removed]" : "") << '\n';
          }
        }
      }
      return 0;
    }

    if (inertia->parsed()) {
      const Cotree c = detail::cotree_arg(input);
      const CountTriple t = inertia_closed_form(c);
      const std::int64_t m1 = mult_minus_one(c);
      const std::int64_t mplus = left_closed_form(c);
      if (fmt == Format::json) {
        out << json{{"cotree", to_json(c)},
                    {"n", c.vertex_count()},
                    {"depth", c.depth()},
                    {"inertia", to_json(t)},
                    {"mult_minus_one", m1},
                    {"left_target", mplus}}
                   .dump()
            << '\n';
      } else if (fmt == Format::csv) {
        out << "positive,zero,negative,mult_minus_one,left_target\n"
            << t.greater << ',' << t.equal << ',' << t.less << ',' << m1 << ',' << mplus << '\n';
      } else {
        out << "n " << c.vertex_count() << "  r " << c.depth() << '\n'
            << "inertia (+,0,-) = (" << t.greater << ", " << t.equal << ", " << t.less << ")\n"
            << "mult(-1) = " << m1 << '\n'
            << "M+ = " << mplus << '\n';
      }
      return 0;
    }

    if (theta->parsed()) {
      const Cotree c = detail::cotree_arg(input);
      const Scalar t = detail::number_arg(tol, "tol");
      if (t.sign() <= 0) throw detail::UsageError("--tol must be positive");
      const Scalar value = side == "plus" ? bisect_theta_plus(c, t) : bisect_theta_minus(c, t);
      if (fmt == Format::json) {
        out << json{{"cotree", to_json(c)},
                    {"side", side},
                    {"tol", to_json(t)},
                    {"value", to_json(value)},
                    {"decimal", format_decimal(value)}}
                   .dump()
            << '\n';
      } else if (fmt == Format::csv) {
        out << "side,value\n" << side << ',' << format_decimal(value) << '\n';
      } else {
        out << format_decimal(value) << '\n';
      }
      return 0;
    }

    if (rfi->parsed() || lfi->parsed()) {
      const bool right_side = rfi->parsed();
      const Scalar bound = right_side ? detail::number_arg(n_text, "n") : detail::number_arg(m_text, "m");
      const ChoicePolicy policy = choices.empty() ? ChoicePolicy::initial() : ChoicePolicy::fixed(detail::choices_arg(choices));
      const Generated g = right_side ? generate_right_free(bound, r, policy) : generate_left_free(bound, r, policy);
      detail::print_generated(out, fmt, right_side ? "N" : "M", bound, r, g);
      return 0;
    }

    if (check->parsed()) {
      const Cotree c = detail::cotree_arg(input);
      const Interval iv =
          !right.empty() ? Interval::right(detail::number_arg(right, "right")) : Interval::left(detail::number_arg(left, "left"));
      const bool free = is_free(c, iv);
      const CountTriple t = count_triple(c, iv.bound);
      if (fmt == Format::json) {
        out << json{{"cotree", to_json(c)}, {"interval", to_json(iv)}, {"free", free}, {"counts", to_json(t)}}.dump()
            << '\n';
      } else if (fmt == Format::csv) {
        out << "free,greater,equal,less\n" << (free ? "true" : "false") << ',' << t.greater << ',' << t.equal << ','
            << t.less << '\n';
      } else {
        out << c.to_string() << (free ? " is free on " : " is NOT free on ") << iv.to_string() << '\n';
      }
      return 0;
    }

    if (search->parsed()) {
      const Cotree c = detail::cotree_arg(input);
      const Interval iv =
          !right.empty() ? Interval::right(detail::number_arg(right, "right")) : Interval::left(detail::number_arg(left, "left"));
      SearchOptions opts;
      opts.workers = workers > 0 ? workers : detail::default_workers();
      opts.progress = [&err](const SearchProgress& p) {
        err << "searched " << p.examined << " / " << p.total << '\n' << std::flush;
      };
      opts.progress_interval = std::chrono::milliseconds(2000);
      const SearchReport rep = minimality_search(c, iv, opts);
      if (fmt == Format::json) {
        out << to_json(rep).dump() << '\n';
      } else if (fmt == Format::csv) {
        out << "counterexample\n";
        for (const auto& ce : rep.counterexamples) out << '"' << ce.to_string() << "\"\n";
      } else {
        out << "base " << rep.base.to_string() << (rep.base_free ? " (free" : " (NOT free") << " on "
            << iv.to_string() << ")\n"
            << "lattice K = " << rep.lattice_size_product << ", constrained " << rep.lattice_size << ", examined "
            << rep.examined << (rep.complete ? "" : " (incomplete)") << '\n'
            << "counterexamples " << rep.counterexamples.size() << '\n';
        for (const auto& ce : rep.counterexamples) out << "  " << ce.to_string() << '\n';
        out << "wall " << format_float(rep.wall_seconds, 4) << " s with " << rep.workers << " worker(s)\n";
      }
      return 0;
    }

    if (oracle->parsed()) {
      const Cotree c = detail::cotree_arg(input);
      const Spectrum s = oracle_spectrum(c, cap);
      if (fmt == Format::json) {
        json j = to_json(s);
        j["cotree"] = to_json(c);
        out << j.dump() << '\n';
      } else {
        write_spectrum_csv(out, s);
      }
      return 0;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n\n" << kCliGrammar;
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << kCliGrammar;
  return 2;
}

}  // namespace threshold
