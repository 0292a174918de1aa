// digitlab: compute digit/carry objects and run the verification catalog.
//
// Exit codes: 0 all executed checks passed, 1 a check failed (exact
// mismatch or rigorous/tolerance bound violation; heuristic-bound misses
// are reported but not fatal), 2 usage or domain error.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "digitlab/digitlab.hpp"

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kOrderCeiling = 10000;
constexpr std::uint64_t kTermsCeiling = 10000000;

digitlab::Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("expected a nonnegative integer, got '" + text + "'");
  return digitlab::Natural(text);
}

ordered_json json_natural(const digitlab::Natural& n) {
  if (n <= 9007199254740991ULL)  // largest integer a double (hence JSON) holds exactly
    return ordered_json(n.convert_to<std::uint64_t>());
  return ordered_json(n.str());
}

ordered_json json_complex(const digitlab::Complex& c) {
  return ordered_json::array({c.real(), c.imag()});
}

struct GlobalOptions {
  std::string format = "human";
  long long seed = 0;
};

ordered_json config_json(const GlobalOptions& g, const digitlab::CatalogParams& p,
                         int window) {
  ordered_json cfg;
  cfg["base"] = json_natural(p.base);
  cfg["order"] = p.order;
  cfg["s"] = json_complex(p.s);
  cfg["terms"] = p.terms;
  cfg["window"] = window;
  cfg["seed"] = g.seed;
  cfg["format"] = g.format;
  return cfg;
}

ordered_json check_json(const digitlab::CheckResult& r) {
  ordered_json j;
  j["id"] = r.id;
  j["kind"] = r.exact ? "exact" : "numeric";
  if (r.exact) {
    const digitlab::VerificationReport& rep = *r.report;
    j["base"] = json_natural(rep.spec.base.value());
    j["order"] = rep.spec.order;
    j["passed"] = r.passed;
    if (rep.first_divergence) {
      const digitlab::Divergence& d = *rep.first_divergence;
      j["first_divergence"] = {{"q_exponent", d.q_exponent},
                               {"lhs", d.lhs.str()},
                               {"rhs", d.rhs.str()},
                               {"check", d.check}};
    } else {
      j["first_divergence"] = nullptr;
    }
  } else {
    const digitlab::NumericCheck& c = *r.numeric;
    j["passed"] = r.passed;
    j["abs_error"] = c.abs_error;
    j["bound"] = c.bound;
    j["bound_kind"] = digitlab::to_string(c.bound_kind);
    j["lhs"] = json_complex(c.lhs);
    j["rhs"] = json_complex(c.rhs);
    j["detail"] = c.detail;
  }
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

void print_human_check(const digitlab::CheckResult& r) {
  std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.id;
  if (r.exact) {
    std::cout << "  (base " << r.report->spec.base.value() << ", order " << r.report->spec.order
              << ")";
    if (r.report->first_divergence) {
      const digitlab::Divergence& d = *r.report->first_divergence;
      std::cout << "\n      first divergence at q^" << d.q_exponent << " [" << d.check
                << "]\n      lhs: " << d.lhs.str() << "\n      rhs: " << d.rhs.str();
    }
  } else {
    const digitlab::NumericCheck& c = *r.numeric;
    std::cout << "  |lhs-rhs| = " << c.abs_error << "  bound = " << c.bound << " ("
              << digitlab::to_string(c.bound_kind) << ")";
    if (!r.passed) std::cout << "\n      " << c.detail;
  }
  std::cout << "  [" << r.elapsed_ms << " ms]\n";
}

// Shared tail of every verification command: sort, emit, pick exit code.
int emit_checks(const std::string& command, const GlobalOptions& g,
                const digitlab::CatalogParams& p, int window,
                std::vector<digitlab::CheckResult> results) {
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  bool all_passed = true;
  bool fatal = false;
  for (const auto& r : results) {
    if (!r.passed) {
      all_passed = false;
      if (r.exact || r.numeric->bound_kind != digitlab::BoundKind::heuristic) fatal = true;
    }
  }
  if (g.format == "json") {
    ordered_json out;
    out["command"] = command;
    out["config"] = config_json(g, p, window);
    out["checks"] = ordered_json::array();
    for (const auto& r : results) out["checks"].push_back(check_json(r));
    out["passed"] = all_passed;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) print_human_check(r);
    std::cout << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return fatal ? 1 : 0;
}

int run_digits(const GlobalOptions& g, const std::string& base_text,
               const std::string& n_text) {
  const digitlab::Base base(parse_natural(base_text));
  const digitlab::Natural n = parse_natural(n_text);
  const digitlab::DigitVec digits = digitlab::to_digits(n, base);
  const digitlab::Natural s = digitlab::digit_sum(n, base);
  if (g.format == "json") {
    ordered_json out;
    out["command"] = "digits";
    out["base"] = json_natural(base.value());
    out["n"] = json_natural(n);
    ordered_json arr = ordered_json::array();
    for (const auto& d : digits.digits) arr.push_back(json_natural(d));
    out["digits"] = arr;
    out["digit_sum"] = json_natural(s);
    out["seed"] = g.seed;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "digits (least significant first): [";
    for (std::size_t i = 0; i < digits.digits.size(); ++i)
      std::cout << (i ? "," : "") << digits.digits[i];
    std::cout << "]\ndigit sum " << s << "\n";
  }
  return 0;
}

int run_trace(const GlobalOptions& g, const std::string& base_text,
              const std::vector<std::string>& summand_text) {
  const digitlab::Base base(parse_natural(base_text));
  std::vector<digitlab::Natural> summands;
  summands.reserve(summand_text.size());
  for (const auto& t : summand_text) summands.push_back(parse_natural(t));
  const digitlab::AdditionTrace trace = digitlab::add_with_trace(summands, base);
  if (g.format == "json") {
    ordered_json out;
    out["command"] = "trace";
    out["base"] = json_natural(base.value());
    ordered_json sj = ordered_json::array();
    for (const auto& a : trace.summands) sj.push_back(json_natural(a));
    out["summands"] = sj;
    ordered_json cj = ordered_json::array();
    for (const auto& c : trace.column_carries) cj.push_back(json_natural(c));
    out["carries"] = cj;
    out["carry_sum"] = json_natural(trace.carry_sum);
    out["beta"] = json_natural(trace.terminal_carry);
    out["correction"] = json_natural(trace.correction);
    out["total"] = json_natural(trace.total);
    out["seed"] = g.seed;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "total " << trace.total << "\ncarries [";
    for (std::size_t i = 0; i < trace.column_carries.size(); ++i)
      std::cout << (i ? "," : "") << trace.column_carries[i];
    std::cout << "]\ncarry sum " << trace.carry_sum << "\nbeta " << trace.terminal_carry
              << "\ncorrection " << trace.correction << "\n";
  }
  return 0;
}

void check_ceilings(const digitlab::CatalogParams& p) {
  if (p.order > kOrderCeiling)
    throw std::domain_error("order exceeds the ceiling (" + std::to_string(kOrderCeiling) +
                            ")");
  if (p.terms > kTermsCeiling)
    throw std::domain_error("terms exceeds the ceiling (" + std::to_string(kTermsCeiling) +
                            ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digitlab: exact and numeric checks for base-B digit sums and carries"};
  app.require_subcommand(1);

  GlobalOptions g;
  CLI::Option* format_opt = app.add_option("--format", g.format, "output format")
                                ->check(CLI::IsMember({"human", "json"}));
  app.add_option("--seed", g.seed, "seed echoed into reports (reserved for sampling)");

  std::string base_text = "10";
  std::size_t order = 200;
  std::size_t squared_order = 128;
  long long shift_j = 1;
  std::string repeat_a_text = "3";
  double s_re = 3.0, s_im = 0.0;
  std::uint64_t terms = 1000000;
  int window = 40;
  std::optional<std::size_t> mutate;
  std::vector<std::string> id_args;
  std::vector<std::string> summand_args;
  std::string digits_n;

  CLI::App* digits = app.add_subcommand("digits", "base-B digits and digit sum of n");
  digits->add_option("--base", base_text, "radix (>= 2)");
  digits->add_option("n", digits_n, "nonnegative integer")->required();

  CLI::App* trace = app.add_subcommand("trace", "column addition with carry bookkeeping");
  trace->add_option("--base", base_text, "radix (>= 2)");
  trace->add_option("summands", summand_args, "nonnegative integers to add")->required();

  CLI::App* verify = app.add_subcommand("verify", "exact series identities");
  verify->add_option("--base", base_text, "radix (>= 2)");
  verify->add_option("--order", order, "series truncation order");
  verify->add_option("--squared-order", squared_order, "order cap for cor-squared");
  verify->add_option("--shift-j", shift_j, "shift for eq-shift-j (j >= 0)");
  verify->add_option("--repeat-a", repeat_a_text, "repeated summand for thm-chat-repeat");
  verify->add_option("--mutate", mutate,
                     "debug: bump the thm-two-variable LHS coefficient at this exponent");
  verify->add_option("ids", id_args, "identity ids (default: every exact identity)");

  CLI::App* verify_all = app.add_subcommand("verify-all", "full catalog");
  verify_all->add_option("--base", base_text, "radix (>= 2)");
  verify_all->add_option("--order", order, "series truncation order");
  verify_all->add_option("--squared-order", squared_order, "order cap for cor-squared");
  verify_all->add_option("--shift-j", shift_j, "shift for eq-shift-j (j >= 0)");
  verify_all->add_option("--repeat-a", repeat_a_text, "repeated summand for thm-chat-repeat");
  verify_all->add_option("--s-re", s_re, "Re(s) for Dirichlet checks");
  verify_all->add_option("--s-im", s_im, "Im(s) for Dirichlet checks");
  verify_all->add_option("--terms", terms, "Dirichlet summation cutoff");
  verify_all->add_option("--window", window, "bilateral window");
  verify_all->add_option("--mutate", mutate,
                         "debug: bump the thm-two-variable LHS coefficient at this exponent");

  CLI::App* dirichlet = app.add_subcommand("dirichlet", "Dirichlet-series numeric checks");
  dirichlet->add_option("--base", base_text, "radix (>= 2)");
  dirichlet->add_option("--s-re", s_re, "Re(s)");
  dirichlet->add_option("--s-im", s_im, "Im(s)");
  dirichlet->add_option("--terms", terms, "summation cutoff");
  dirichlet->add_option("ids", id_args, "dir-chat, dir-carry, dir-convolution, dir-limit");

  double pt_base = 2.0, x_re = 0.3, x_im = 0.0, z_re = 3.0, z_im = 0.0, q_re = 0.4,
         q_im = 0.0;
  int pt_r = 1, pt_t = 2;
  CLI::App* bilateral = app.add_subcommand("bilateral", "bilateral kernel equations");
  bilateral->add_option("--window", window, "summation window");
  CLI::Option* pb = bilateral->add_option(
      "--point-base", pt_base, "single-point mode: real base (omit to run the default sweep)");
  bilateral->add_option("--x-re", x_re, "Re(x)");
  bilateral->add_option("--x-im", x_im, "Im(x)");
  bilateral->add_option("--z-re", z_re, "Re(z)");
  bilateral->add_option("--z-im", z_im, "Im(z)");
  bilateral->add_option("--q-re", q_re, "Re(q)");
  bilateral->add_option("--q-im", q_im, "Im(q)");
  bilateral->add_option("--r", pt_r, "index shift");
  bilateral->add_option("--t", pt_t, "index dilation (nonzero)");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    digitlab::CatalogParams params;
    params.base = parse_natural(base_text);
    params.order = order;
    params.squared_order = squared_order;
    params.shift_j = shift_j;
    params.repeat_a = parse_natural(repeat_a_text);
    params.s = digitlab::Complex(s_re, s_im);
    params.terms = terms;
    params.bilateral_window = window;
    params.mutate_exponent = mutate;
    check_ceilings(params);

    if (digits->parsed()) return run_digits(g, base_text, digits_n);
    if (trace->parsed()) {
      // Trace output is structured by nature; default to JSON unless asked otherwise.
      if (format_opt->count() == 0) g.format = "json";
      return run_trace(g, base_text, summand_args);
    }

    if (verify->parsed()) {
      std::vector<std::string> ids = id_args;
      if (ids.empty())
        ids = {digitlab::ids::two_variable,
               digitlab::ids::shift,
               digitlab::ids::chat_ones_two_variable,
               digitlab::ids::squared,
               digitlab::ids::hypergeometric,
               digitlab::ids::sB_generating_function,
               digitlab::ids::shiftcor,
               digitlab::ids::chat_ones_gf,
               digitlab::ids::chat_repeat,
               digitlab::ids::lambert_transform};
      std::vector<digitlab::CheckResult> results;
      results.reserve(ids.size());
      for (const auto& id : ids) results.push_back(digitlab::run_catalog_entry(id, params));
      return emit_checks("verify", g, params, window, std::move(results));
    }

    if (verify_all->parsed()) {
      digitlab::CatalogRun run = digitlab::run_catalog(params);
      return emit_checks("verify-all", g, params, window, std::move(run.results));
    }

    if (dirichlet->parsed()) {
      std::vector<std::string> ids = id_args;
      if (ids.empty())
        ids = {digitlab::ids::dirichlet_chat, digitlab::ids::dirichlet_carry,
               digitlab::ids::dirichlet_convolution, digitlab::ids::dirichlet_limit};
      for (const auto& id : ids)
        if (id.rfind("dir-", 0) != 0)
          throw std::invalid_argument("dirichlet: unknown id " + id);
      std::vector<digitlab::CheckResult> results;
      results.reserve(ids.size());
      for (const auto& id : ids) results.push_back(digitlab::run_catalog_entry(id, params));
      return emit_checks("dirichlet", g, params, window, std::move(results));
    }

    if (bilateral->parsed()) {
      std::vector<digitlab::CheckResult> results;
      if (pb->count() > 0) {
        digitlab::detail::Timer timer;
        digitlab::NumericCheck c = digitlab::verify_bilateral_equations(
            pt_base, {x_re, x_im}, {z_re, z_im}, {q_re, q_im}, pt_r, pt_t, window);
        results.push_back(digitlab::detail::from_numeric(std::move(c), timer.elapsed_ms()));
      } else {
        results.push_back(digitlab::run_catalog_entry(digitlab::ids::bilateral, params));
      }
      return emit_checks("bilateral", g, params, window, std::move(results));
    }
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
