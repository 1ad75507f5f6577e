// Command-line front end: factor, roots, lifts, count, verify.
//
// Exit codes: 0 success, 2 irreducible (a result, not an error, so shell
// pipelines can branch without parsing), 1 any error.  With --format json
// every run with the same seed emits byte-identical output.

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pkfactor/pkfactor.hpp"

using namespace pkfactor;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json json_count(u128 n) {
  if (n <= u128(UINT64_MAX)) return ordered_json(u64(n));
  return ordered_json(dec_string(n));  // beyond 64 bits: decimal string
}

ordered_json json_modulus(const PrimePower& pp) {
  return ordered_json{{"p", pp.p}, {"k", pp.k}};
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

struct CommonOpts {
  u64 p = 0;
  unsigned k = 1;
  u64 seed = 1;
  std::string format = "text";

  bool json() const { return format == "json"; }
};

int cmd_factor(const CommonOpts& opt, const std::string& poly_text) {
  PrimePower pp(opt.p, opt.k);
  if (pp.k > 4) throw error("factoring supports k <= 4");
  DensePoly f = parse_poly(poly_text, pp.pk);
  Rng rng(opt.seed);
  FactorOutcome out = factor(f, pp, rng);
  if (out.factored) {
    // never print an unverified factor
    if (!verify_factor(out.reduced_input, out.g, pp) ||
        !verify_factor(out.reduced_input, out.h, pp))
      throw internal_error("produced factor failed verification");
  }
  if (opt.json()) {
    ordered_json j;
    j["status"] = out.factored ? "factored" : "irreducible";
    j["factors"] = ordered_json::array();
    if (out.factored) {
      j["factors"].push_back(format_poly(out.g));
      j["factors"].push_back(format_poly(out.h));
    }
    j["modulus"] = json_modulus(pp);
    j["stripped_power"] = out.stripped_power;
    j["input"] = format_poly(out.reduced_input);
    j["seed"] = opt.seed;
    emit(j);
  } else if (out.factored) {
    std::cout << "status: factored\n";
    if (out.stripped_power)
      std::cout << "stripped: p^" << out.stripped_power << "\n";
    std::cout << "input: " << format_poly(out.reduced_input) << "\n";
    std::cout << "g: " << format_poly(out.g) << "\n";
    std::cout << "h: " << format_poly(out.h) << "\n";
  } else {
    std::cout << "IRREDUCIBLE\n";
    std::cout << "input: " << format_poly(out.reduced_input) << "\n";
    std::cout << "exponents examined:";
    for (auto& [a, desc] : out.certificate) std::cout << " " << a;
    std::cout << "\n";
  }
  return out.factored ? 0 : 2;
}

int cmd_roots(const CommonOpts& opt, const std::string& phi_text, unsigned ell,
              const std::string& poly_text) {
  PrimePower base(opt.p, 1);
  DensePoly phi = parse_poly(phi_text, base.pk);
  Rng rng(opt.seed);
  if (!phi.is_monic() || phi.degree() < 1) throw error("phi must be monic of degree >= 1");
  if (!is_irreducible_mod_p(phi, rng)) throw error("phi is not irreducible mod p");
  if (ell < 1) throw error("precision ell must be >= 1");
  PhiAdicRing R(FqCtx(opt.p, phi), ell);
  std::vector<DensePoly> g = parse_poly_in_y(poly_text, base.pk);
  RepRootSet roots = root_find(g, R, rng);
  u128 total = rep_count(roots, R);
  if (opt.json()) {
    ordered_json j;
    j["status"] = "ok";
    j["reps"] = ordered_json::array();
    for (const auto& m : roots.members)
      j["reps"].push_back(ordered_json{{"v", format_poly(m.v)}, {"j", m.j}});
    j["count"] = json_count(total);
    j["modulus"] = json_modulus(base);
    j["phi"] = format_poly(phi);
    j["ell"] = ell;
    j["seed"] = opt.seed;
    emit(j);
  } else {
    std::cout << "roots over F_" << opt.p << "[x]/<(" << format_poly(phi) << ")^" << ell
              << ">\n";
    for (const auto& m : roots.members)
      std::cout << "  (" << format_poly(m.v) << ") + phi^" << m.j << " * ...\n";
    std::cout << "count: " << dec_string(total) << "\n";
  }
  return 0;
}

int cmd_lifts(const CommonOpts& opt, const std::string& factor_text, u64 expand_n,
              const std::string& poly_text) {
  PrimePower pp(opt.p, opt.k);
  if (pp.k > 4) throw error("lift enumeration supports k <= 4");
  DensePoly f = parse_poly(poly_text, pp.pk);
  DensePoly gbar = parse_poly(factor_text, pp.p);
  Rng rng(opt.seed);
  LiftDescription ld = enumerate_lifts(f, gbar, pp, rng);
  std::vector<DensePoly> lifts;
  if (expand_n > 0) {
    lifts = expand_lifts(ld, pp, expand_n);
    for (const auto& g : lifts) {
      if (!verify_factor(ld.f_norm, g, pp)) throw internal_error("lift failed verification");
    }
  }
  if (opt.json()) {
    ordered_json j;
    j["status"] = "ok";
    j["base"] = format_poly(ld.base);
    j["count"] = json_count(ld.count);
    j["lifts"] = ordered_json::array();
    for (const auto& g : lifts) j["lifts"].push_back(format_poly(g));
    j["modulus"] = json_modulus(pp);
    j["seed"] = opt.seed;
    emit(j);
  } else {
    std::cout << "base: " << format_poly(ld.base) << "\n";
    if (ld.desc.has_value()) {
      std::cout << "strata:\n";
      for (const auto& st : ld.desc->strata) {
        std::cout << "  y0 in (" << format_poly(st.rep.v) << ") + phi^" << st.rep.j
                  << " * ...";
        for (const auto& ex : st.excluded)
          std::cout << "  minus (" << format_poly(ex.v) << ") + phi^" << ex.j << " * ...";
        std::cout << "  [q^" << st.r << " choices of y1]\n";
      }
    }
    std::cout << "count: " << dec_string(ld.count) << "\n";
    for (const auto& g : lifts) std::cout << "  " << format_poly(g) << "\n";
  }
  return 0;
}

int cmd_count(const CommonOpts& opt, const std::string& poly_text) {
  PrimePower pp(opt.p, opt.k);
  if (pp.k != 3) throw error("count requires -k 3");
  DensePoly f = parse_poly(poly_text, pp.pk);
  Rng rng(opt.seed);
  P3FactorCount result = count_factors_p3(f, pp, rng);
  if (opt.json()) {
    ordered_json j;
    j["status"] = "ok";
    j["count"] = json_count(result.total);
    j["nontrivial"] = json_count(result.nontrivial);
    j["parts"] = ordered_json::array();
    for (const auto& part : result.parts) {
      ordered_json pj;
      pj["phi"] = format_poly(part.phi);
      pj["e"] = part.e;
      pj["count"] = json_count(part.part_total);
      pj["per_exponent"] = ordered_json::array();
      for (auto& [a, n] : part.per_exponent)
        pj["per_exponent"].push_back(ordered_json{{"a", a}, {"count", json_count(n)}});
      j["parts"].push_back(pj);
    }
    j["modulus"] = json_modulus(pp);
    j["seed"] = opt.seed;
    emit(j);
  } else {
    std::cout << "monic factors mod " << opt.p << "^3 (including 1 and f): "
              << dec_string(result.total) << "\n";
    std::cout << "nontrivial: " << dec_string(result.nontrivial) << "\n";
    for (const auto& part : result.parts)
      std::cout << "  part (" << format_poly(part.phi) << ")^" << part.e << ": "
                << dec_string(part.part_total) << "\n";
  }
  return 0;
}

// pipeline-vs-oracle equivalence over a parameter grid; prints a minimal
// reproducer and exits nonzero on the first mismatch
int cmd_verify(u64 pmax, unsigned degmax, unsigned kmax, u64 samples, u64 seed,
               bool inject_fault) {
  Rng rng(seed);
  OracleBudget budget{1u << 26, 600.0};
  u64 instances = 0, checks = 0, skipped = 0;
  bool fault_pending = inject_fault;

  auto report_mismatch = [&](const std::string& what, const DensePoly& f, u64 p, unsigned k) {
    std::cout << "MISMATCH: " << what << "\n";
    std::cout << "reproduce: pkfactor factor -p " << p << " -k " << k << " --seed " << seed
              << " \"" << format_poly(f) << "\"\n";
  };

  std::vector<u64> primes;
  for (u64 p = 2; p <= pmax; ++p)
    if (is_prime_u64(p)) primes.push_back(p);

  for (u64 p : primes) {
    for (unsigned k = 2; k <= kmax; ++k) {
      PrimePower pp(p, k);
      std::vector<DensePoly> corpus;
      // exhaustive small-degree sweep for the smallest primes
      if (p <= 3 && degmax >= 2) {
        for (unsigned d = 1; d <= 2; ++d) {
          u128 total = checked_pow_u128(pp.pk, d);
          std::vector<u128> digits(d, 0);
          for (u128 n = 0; n < total; ++n) {
            DensePoly f(pp.pk);
            f.coeffs = digits;
            f.coeffs.resize(d + 1, 0);
            f.coeffs[d] = 1;
            corpus.push_back(f);
            for (unsigned i = 0; i < d; ++i) {
              if (++digits[i] < pp.pk) break;
              digits[i] = 0;
            }
          }
        }
      }
      for (u64 s = 0; s < samples; ++s) {
        unsigned d = 1 + unsigned(rng.below(degmax));
        DensePoly f(pp.pk);
        for (unsigned i = 0; i < d; ++i) f.coeffs.push_back(rng.below(u64(pp.pk)));
        f.coeffs.resize(d + 1, 0);
        f.coeffs[d] = 1;
        corpus.push_back(f);
      }

      for (const DensePoly& f : corpus) {
        ++instances;
        FactorOutcome out = factor(f, pp, rng);
        bool found = out.factored;
        if (fault_pending && found) {
          found = false;  // deliberate corruption to prove the harness trips
          fault_pending = false;
        }
        bool oracle_found;
        try {
          oracle_found = brute_has_nontrivial_factor(out.reduced_input, pp, budget);
        } catch (const budget_error&) {
          ++skipped;  // oracle too expensive for this cell; factor() itself still ran
          continue;
        }
        ++checks;
        if (found != oracle_found) {
          report_mismatch(found ? "factor() reports a factor the oracle cannot see"
                                : "oracle finds a factor but factor() reported irreducible",
                          f, p, k);
          return 1;
        }
        if (out.factored) {
          ++checks;
          if (!verify_factor(out.reduced_input, out.g, pp) ||
              !verify_factor(out.reduced_input, out.h, pp) ||
              !(mul(out.g, out.h) == out.reduced_input)) {
            report_mismatch("returned factors do not multiply back", f, p, k);
            return 1;
          }
        }
        // lift counting against the oracle on power-of-irreducible inputs
        DensePoly fbar = reduce_to_modulus(out.reduced_input, p);
        auto parts = cz_factor(fbar, rng);
        if (parts.size() == 1 && parts[0].second >= 2) {
          const DensePoly& phi = parts[0].first;
          unsigned e = parts[0].second;
          for (unsigned a = 1; a < e; ++a) {
            unsigned d_lift = a * unsigned(phi.degree());
            if (checked_pow_u128(pp.pk, d_lift) > (1u << 16)) continue;
            auto ld = enumerate_lifts(out.reduced_input, pow_u(phi, a), pp, rng);
            u64 want = 0;
            DensePoly target = pow_u(phi, a);
            for (auto& g : brute_divisors(out.reduced_input, pp, d_lift, d_lift, budget))
              if (reduce_to_modulus(g, p) == target) ++want;
            ++checks;
            if (ld.count != want) {
              report_mismatch("lift count disagrees with the divisor scan (a = " +
                                  std::to_string(a) + ")",
                              f, p, k);
              return 1;
            }
          }
        }
        // mod-p^3 factor counting
        if (k == 3 && unsigned(f.degree()) <= 4 &&
            checked_pow_u128(pp.pk, unsigned(f.degree()) / 2) <= (1u << 16)) {
          auto got = count_factors_p3(out.reduced_input, pp, rng);
          u128 want = brute_count_factors(out.reduced_input, pp, budget);
          ++checks;
          if (got.total != want) {
            report_mismatch("mod-p^3 factor count disagrees with the oracle", f, p, k);
            return 1;
          }
        }
      }
    }
  }
  if (inject_fault && fault_pending) {
    std::cout << "MISMATCH: fault injection requested but no reducible instance arose\n";
    return 1;
  }
  std::cout << "verify: OK (" << instances << " instances, " << checks << " checks";
  if (skipped) std::cout << ", " << skipped << " skipped over the oracle budget";
  std::cout << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factoring univariate integer polynomials modulo p^k, k <= 4"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string poly_text, phi_text, factor_text;
  unsigned ell = 1;
  u64 expand_n = 0;
  u64 pmax = 3, samples = 50;
  unsigned degmax = 4, kmax = 4;
  bool inject_fault = false;

  auto add_common = [&](CLI::App* sub, bool with_k) {
    sub->add_option("-p,--prime", opt.p, "prime p")->required();
    if (with_k) sub->add_option("-k,--power", opt.k, "exponent k of the modulus p^k")->required();
    sub->add_option("--seed", opt.seed, "random seed (default 1)");
    sub->add_option("--format", opt.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* fac = app.add_subcommand("factor", "factor f mod p^k or certify irreducibility");
  add_common(fac, true);
  fac->add_option("poly", poly_text, "polynomial, e.g. \"x^2+10*x+21\" or \"[21,10,1]\"")
      ->required();

  CLI::App* roots = app.add_subcommand("roots", "all roots of g(y) over F_p[x]/<phi^ell>");
  add_common(roots, false);
  roots->add_option("--phi", phi_text, "monic irreducible phi(x) mod p")->required();
  roots->add_option("-l,--ell", ell, "precision: the power of phi")->required();
  roots->add_option("poly", poly_text, "polynomial in y, e.g. \"y^2 + x*y + (x+1)\"")
      ->required();

  CLI::App* lifts = app.add_subcommand("lifts", "count/enumerate monic lifts of a mod-p factor");
  add_common(lifts, true);
  lifts->add_option("-g,--factor", factor_text, "the mod-p factor to lift")->required();
  lifts->add_option("--expand", expand_n, "list up to N explicit lifts");
  lifts->add_option("poly", poly_text, "polynomial f")->required();

  CLI::App* count = app.add_subcommand("count", "count all monic factors of f mod p^3");
  add_common(count, true);
  count->add_option("poly", poly_text, "polynomial f")->required();

  CLI::App* verify = app.add_subcommand("verify", "pipeline-vs-oracle equivalence sweep");
  verify->add_option("--pmax", pmax, "largest prime in the grid (default 3)");
  verify->add_option("--degmax", degmax, "largest degree (default 4)");
  verify->add_option("--kmax", kmax, "largest k (default 4)");
  verify->add_option("--samples", samples, "random instances per (p, k) cell (default 50)");
  verify->add_option("--seed", opt.seed, "random seed");
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt one comparison to confirm mismatches are caught");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(fac)) return cmd_factor(opt, poly_text);
    if (app.got_subcommand(roots)) return cmd_roots(opt, phi_text, ell, poly_text);
    if (app.got_subcommand(lifts)) return cmd_lifts(opt, factor_text, expand_n, poly_text);
    if (app.got_subcommand(count)) return cmd_count(opt, poly_text);
    if (app.got_subcommand(verify))
      return cmd_verify(pmax, degmax, kmax, samples, opt.seed, inject_fault);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
