#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qlam/suites.hpp"

using namespace qlam;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("--out", "cannot open " + path);
  out << text << "\n";
}

// "p^a,(q^(1/R)-1)^b" with R a power of p; either part may be omitted
QuotientSpec parse_trunc(const std::string& s, int p) {
  QuotientSpec spec;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? s.size() : comma + 1;
    long long base = 0, root = 0;
    unsigned expn = 0;
    if (std::sscanf(part.c_str(), "(q^(1/%lld)-1)^%u", &root, &expn) == 2) {
      int M = 0;
      for (long long r = root; r > 1; r /= p, ++M)
        if (r % p) throw CLI::ValidationError("--trunc", "root is not a power of p");
      spec.add_qroot_minus_one(p, M, expn);
    } else if (std::sscanf(part.c_str(), "(q-1)^%u", &expn) == 1) {
      spec.add_qroot_minus_one(p, 0, expn);
    } else if (std::sscanf(part.c_str(), "%lld^%u", &base, &expn) == 2) {
      spec.add_int_modulus(static_cast<int>(base), expn);
    } else {
      throw CLI::ValidationError("--trunc", "cannot parse component '" + part + "'");
    }
  }
  return spec;
}

std::string suites_text(const SuiteResult& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += (c.pass ? "PASS " : "FAIL ") + c.suite + "/" + c.name + ": " + c.certifies;
    if (!c.pass) out += " [counterexample: " + c.counterexample + "]";
    out += "\n";
  }
  out += r.ok() ? "all checks passed" : "FAILED";
  return out;
}

std::string suites_csv(const SuiteResult& r) {
  std::string out = "suite,check,pass,counterexample";
  for (const auto& c : r.checks) {
    std::string ce = c.counterexample;
    for (auto& ch : ce)
      if (ch == ',' || ch == '\n') ch = ';';
    out += "\n" + c.suite + "," + c.name + "," + (c.pass ? "true" : "false") + "," + ce;
  }
  return out;
}

std::string cohomology_csv(const CohomologyReport& rep) {
  std::string out = "degree,weight,divisors,coeff_ring";
  for (const auto& e : rep.entries) {
    std::string w, d;
    for (size_t i = 0; i < e.weight.size(); ++i)
      w += (i ? " " : "") + e.weight[i].str();
    for (size_t i = 0; i < e.divisors.size(); ++i)
      d += (i ? " " : "") + e.divisors[i];
    out += "\n" + std::to_string(e.degree) + "," + w + "," + d + "," + e.coeff_ring;
  }
  return out;
}

std::string cohomology_text(const CohomologyReport& rep) {
  std::string out;
  for (const auto& e : rep.entries) {
    std::string w, d;
    for (size_t i = 0; i < e.weight.size(); ++i)
      w += (i ? "," : "") + e.weight[i].str();
    for (size_t i = 0; i < e.divisors.size(); ++i)
      d += (i ? " + " : "") + std::string(e.divisors[i] == "0" ? "free" : "torsion " + e.divisors[i]);
    if (d.empty()) d = "0";
    out += "H^" + std::to_string(e.degree) + " weight (" + w + ") over " +
           e.coeff_ring + ": " + d + "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-deformation toolkit: q-binomials, de Rham-style complexes, "
               "Witt vectors, Cartier maps, fractional-power lattices"};
  app.require_subcommand(1);
  int exit_code = 0;

  int p = 2, vars = 1, max_weight = 8, depth = 2, max_k = 6, max_n = 8;
  std::string trunc, coeff = "Qq", format = "json", out_path;

  auto add_common = [&](CLI::App* cmd, bool with_coeff) {
    cmd->add_option("--p", p, "prime (2 or 3 where cyclotomic data is needed)");
    cmd->add_option("--vars", vars, "number of variables")->check(CLI::Range(1, 3));
    cmd->add_option("--max-weight", max_weight, "weight bound")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--depth", depth, "fractional-power depth N")
        ->check(CLI::Range(0, 4));
    cmd->add_option("--trunc", trunc, "truncation \"p^a,(q^(1/R)-1)^b\"");
    if (with_coeff)
      cmd->add_option("--coeff", coeff, "coefficients")
          ->check(CLI::IsMember({"Qq", "Fq", "Z-q1", "Zzeta", "Zpa"}));
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", out_path, "write the report to a file");
  };

  auto make_coeff = [&]() {
    if (coeff == "Qq") return CoeffRing::qq();
    if (coeff == "Fq") return CoeffRing::fp(p);
    if (coeff == "Z-q1") return CoeffRing::z_q1();
    if (coeff == "Zzeta") return CoeffRing::zzeta(p);
    unsigned a = 1;
    if (!trunc.empty()) {
      QuotientSpec spec = parse_trunc(trunc, p);
      if (spec.p) a = spec.a;
    }
    return CoeffRing::zpa(p, a);
  };

  // qbinom
  long long qb_n = 0, qb_k = 0;
  auto* qbinom = app.add_subcommand("qbinom", "print the Gaussian binomial binom(n,k)_q");
  qbinom->add_option("--n", qb_n, "upper index")->required();
  qbinom->add_option("--k", qb_k, "lower index")->required();
  qbinom->add_option("--out", out_path, "write the polynomial to a file");
  qbinom->callback([&] {
    if (qb_n < 0 || qb_k < 0 || qb_k > qb_n)
      throw CLI::ValidationError("qbinom", "requires 0 <= k <= n");
    emit(q_binomial(static_cast<int>(qb_n), static_cast<int>(qb_k)).str(), out_path);
  });

  // verify
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an identity suite and report");
  verify->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(
          {"lambda", "basis", "taylor", "witt", "decalage", "cartier", "qdrw", "all"}));
  verify->add_option("--max-k", max_k, "lambda/basis index bound")->check(CLI::Range(0, 10));
  verify->add_option("--max-n", max_n, "q-integer bound")->check(CLI::Range(0, 12));
  add_common(verify, false);
  verify->callback([&] {
    QuotientSpec spec;
    if (trunc.empty()) {
      spec.add_int_modulus(p, 4);
      spec.add_qroot_minus_one(p, std::min(depth, 2), 16);
    } else {
      spec = parse_trunc(trunc, p);
    }
    SuiteResult r;
    if (suite == "lambda" || suite == "all") r.append(suite_lambda(max_n, max_k));
    if (suite == "basis" || suite == "all") r.append(suite_basis(max_k));
    if (suite == "taylor" || suite == "all") r.append(suite_taylor(max_n));
    if (suite == "witt" || suite == "all") r.append(suite_witt(4));
    if (suite == "decalage" || suite == "all") r.append(suite_decalage(vars, max_weight));
    if (suite == "cartier" || suite == "all") r.append(suite_cartier(p, max_weight));
    if (suite == "qdrw" || suite == "all")
      r.append(suite_qdrw(p, depth, max_weight, spec));
    std::string text = format == "json"   ? r.to_json()
                       : format == "csv"  ? suites_csv(r)
                                          : suites_text(r);
    emit(text, out_path);
    if (!r.ok()) {
      const CheckResult* f = r.first_failure();
      std::cerr << "first counterexample at " << f->suite << "/" << f->name << ": "
                << f->counterexample << "\n";
      exit_code = 1;
    }
  });

  // cohomology
  std::string kind = "q-omega";
  auto* cohom = app.add_subcommand("cohomology", "per-weight cohomology of the q-de Rham line");
  cohom->add_option("--kind", kind, "complex kind")
      ->check(CLI::IsMember({"q-omega", "twisted"}));
  add_common(cohom, true);
  cohom->callback([&] {
    auto rep = cohomology_by_weight(
        vars, max_weight,
        kind == "twisted" ? ComplexKind::twisted : ComplexKind::q_omega, make_coeff());
    std::string text = format == "json"   ? rep.to_json()
                       : format == "csv"  ? cohomology_csv(rep)
                                          : cohomology_text(rep);
    emit(text, out_path);
  });

  // lattice
  auto* lattice = app.add_subcommand("lattice", "dump the fractional-power integral lattice");
  add_common(lattice, false);
  lattice->callback([&] {
    auto L = build_lattice(p, depth, Frac(max_weight));
    if (format == "json") {
      emit(L.dump_json(), out_path);
      return;
    }
    std::string text = format == "csv" ? "level,weight,basis" : "";
    for (int level = 0; level <= 1; ++level)
      for (const auto& g : level == 0 ? L.level0 : L.level1) {
        if (format == "csv")
          text += "\n" + std::to_string(level) + "," + g.weight.str() + "," +
                  g.element.str();
        else
          text += (text.empty() ? "" : "\n") + std::string("level ") +
                  std::to_string(level) + " weight " + g.weight.str() + ": " +
                  g.element.str() + (level == 1 ? " dlog x" : "");
      }
    emit(text, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
