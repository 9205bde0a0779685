// Command line front end: word evaluation, closures, conjugacy, scans,
// catalog verdicts and the full verification suite.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage or parse error, 3 internal error.
#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include <magnus/catalog.hpp>
#include <magnus/crystal.hpp>
#include <magnus/finite_group.hpp>
#include <magnus/product_magnus.hpp>
#include <magnus/verify.hpp>
#include <magnus/word.hpp>

using namespace magnus;

namespace {

struct Line {
  std::string name;
  std::string status;  // pass | fail | info
  std::string detail;
  std::string witness;  // optional
};

struct Report {
  std::string command;
  std::string group;
  std::vector<Line> lines;

  void info(std::string name, std::string detail, std::string witness = "") {
    lines.push_back({std::move(name), "info", std::move(detail), std::move(witness)});
  }
  void verdict(std::string name, bool pass, std::string detail,
               std::string witness = "") {
    lines.push_back({std::move(name), pass ? "pass" : "fail", std::move(detail),
                     std::move(witness)});
  }
  bool failed() const {
    for (const auto& l : lines)
      if (l.status == "fail") return true;
    return false;
  }
};

void render_text(const Report& r, long long ms, std::ostream& out) {
  out << "# " << r.command;
  if (!r.group.empty()) out << "  [" << r.group << "]";
  out << "\n";
  for (const auto& l : r.lines) {
    std::string tag = l.status == "pass" ? "PASS" : l.status == "fail" ? "FAIL" : "INFO";
    out << tag << " " << l.name << ": " << l.detail << "\n";
    if (!l.witness.empty()) out << "     witness: " << l.witness << "\n";
  }
  out << "elapsed: " << ms << " ms\n";
}

void render_json(const Report& r, long long ms, std::ostream& out) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& l : r.lines) {
    nlohmann::json c{{"name", l.name}, {"status", l.status}, {"detail", l.detail}};
    if (!l.witness.empty()) c["witness"] = l.witness;
    checks.push_back(std::move(c));
  }
  nlohmann::json j{{"schema", "magnus-report/1"},
                   {"command", r.command},
                   {"group", r.group},
                   {"checks", std::move(checks)},
                   {"elapsed_ms", ms}};
  out << j.dump(2) << "\n";
}

std::string big(const BigInt& n) { return n.str(); }

const CrystalGroup& resolve_crystal(const std::string& s) {
  if (s == "hw") return CrystalGroup::hw();
  if (s == "g3" || s == "gp:3") return CrystalGroup::gp(3);
  if (s == "g5" || s == "gp:5") return CrystalGroup::gp(5);
  if (s == "g7" || s == "gp:7") return CrystalGroup::gp(7);
  throw std::invalid_argument("unknown crystal group '" + s +
                              "' (expected hw, g3, gp:5 or gp:7)");
}

CrystalElement eval_word(const CrystalGroup& G, const std::string& text) {
  Word w = parse(text);
  CrystalOps ops{&G};
  return evaluate(w, G.word_environment(), ops);
}

std::string holonomy_str(const CrystalElement& e) {
  return "(" + std::to_string(e.qi) + "," + std::to_string(e.qj) + ")";
}

std::string lattice_rows(const CrystalGroup& G, const Lattice& l) {
  if (l.is_zero()) return "0";
  std::string out;
  for (const auto& row : l.basis()) {
    if (!out.empty()) out += "; ";
    out += G.translation_string(row);
  }
  return out;
}

Report cmd_cyclic(long long n) {
  Report r;
  r.command = "cyclic " + std::to_string(n);
  r.group = "C" + std::to_string(n);
  FiniteGroup g = FiniteGroup::from_cyclic_factors({n});
  MagnusResult res = g.has_magnus();
  if (res.has_property) {
    r.verdict("magnus-property", true, "holds for the cyclic group of order " +
                                           std::to_string(n));
  } else {
    auto [a, b] = *res.witness;
    r.verdict("magnus-property", false,
              "fails: equal normal closures, conjugate to neither the other "
              "nor its inverse",
              g.label(a) + " vs " + g.label(b));
  }
  return r;
}

Report cmd_product_cyclic(long long m, long long n) {
  Report r;
  r.command = "product-cyclic " + std::to_string(m) + " " + std::to_string(n);
  r.group = "C" + std::to_string(m) + " x C" + std::to_string(n);
  FiniteGroup cm = FiniteGroup::from_cyclic_factors({m});
  FiniteGroup cn = FiniteGroup::from_cyclic_factors({n});
  FiniteGroup p = FiniteGroup::direct_product(cm, cn);

  int x = m > 1 ? 1 : 0;
  int y = n > 1 ? 1 : 0;
  int a = x * static_cast<int>(n) + y;
  int b = x * static_cast<int>(n) + cn.inv(y);
  bool equal = p.normal_closure(a) == p.normal_closure(b);
  r.info("closure-equality",
         std::string(equal ? "true" : "false") +
             ": closures of (x,y) and (x,y^-1) " + (equal ? "agree" : "differ") +
             " (gcd = " + std::to_string(std::gcd(m, n)) + ")");

  MagnusResult res = p.has_magnus();
  if (res.has_property) {
    r.verdict("magnus-property", true, "holds for the product");
  } else {
    auto [u, v] = *res.witness;
    r.verdict("magnus-property", false, "fails for the product",
              p.label(u) + " vs " + p.label(v));
  }
  return r;
}

Report cmd_finite(const std::string& name) {
  Report r;
  r.command = "finite " + name;
  r.group = name;
  FiniteGroup g = catalog_group(name);
  r.info("order", std::to_string(g.order()));
  MagnusResult res = g.has_magnus();
  if (res.has_property) {
    r.verdict("magnus-property", true, "holds");
  } else {
    auto [a, b] = *res.witness;
    r.verdict("magnus-property", false, "fails",
              g.label(a) + " vs " + g.label(b));
  }
  return r;
}

Report cmd_eval(const CrystalGroup& G, const std::vector<std::string>& words,
                const std::string& file) {
  Report r;
  r.command = "crystal " + G.name() + " eval";
  r.group = G.name();
  std::vector<std::string> all = words;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open corpus file '" + file + "'");
    for (const auto& entry : read_corpus(in)) all.push_back(entry.text);
  }
  if (all.empty())
    throw std::invalid_argument("eval needs at least one word or --file");
  for (const auto& text : all) {
    auto e = eval_word(G, text);
    r.info(text, "holonomy " + holonomy_str(e) + ", translation " +
                     G.translation_string(e.t),
           G.to_string(e));
  }
  return r;
}

Report cmd_closure(const CrystalGroup& G, const std::string& text) {
  Report r;
  r.command = "crystal " + G.name() + " closure " + text;
  r.group = G.name();
  auto e = eval_word(G, text);
  auto n = G.normal_closure(e);
  r.info("element", G.to_string(e));
  r.info("holonomy-image-order", std::to_string(n.d));
  r.info("cyclic-index", big(G.closure_cyclic_index(e)),
         "order of the element in its closure modulo the commutator part");
  r.info("translation-lattice", lattice_rows(G, n.translations));
  r.info("commutator-lattice", lattice_rows(G, n.commutators));
  return r;
}

Report cmd_conj(const CrystalGroup& G, const std::string& ta, const std::string& tb) {
  Report r;
  r.command = "crystal " + G.name() + " conj " + ta + " " + tb;
  r.group = G.name();
  auto a = eval_word(G, ta);
  auto b = eval_word(G, tb);
  r.info("left", G.to_string(a));
  r.info("right", G.to_string(b));
  if (a.qi != b.qi || a.qj != b.qj) {
    r.info("conjugate", "NOT conjugate: holonomy classes differ (" +
                            holonomy_str(a) + " vs " + holonomy_str(b) + ")");
    return r;
  }
  // locate the holonomy class of a conjugator, if any
  auto orbit = G.conjugacy_orbit(a);
  auto [rep, k] = G.conjugates_lattice(a);
  IntVec reduced = k.reduce(b.t);
  int found = -1;
  for (size_t q = 0; q < orbit.size(); ++q)
    if (orbit[q] == reduced) {
      found = static_cast<int>(q);
      break;
    }
  if (found >= 0) {
    int p = G.p();
    r.info("conjugate", "conjugate: a conjugator exists with holonomy class (" +
                            std::to_string(found / p) + "," +
                            std::to_string(found % p) + ")");
  } else {
    r.info("conjugate", "NOT conjugate: all " + std::to_string(orbit.size()) +
                            " conjugator holonomy classes miss the target coset");
  }
  return r;
}

Report cmd_scan(const CrystalGroup& G, const ScanOptions& opt) {
  Report r;
  r.command = "crystal " + G.name() + " scan";
  r.group = G.name();
  auto rep = G.magnus_scan(opt);
  r.info("region", rep.region);
  r.info("elements", std::to_string(rep.elements) + " elements, " +
                         std::to_string(rep.closure_classes) +
                         " distinct closures" +
                         (rep.support_restricted
                              ? ", support restricted to " +
                                    std::to_string(rep.effective_support)
                              : ""));
  if (rep.violations.empty()) {
    r.verdict("magnus-within-region", true,
              "every equal-closure pair is conjugate up to inverse");
  } else {
    std::string w;
    size_t shown = std::min<size_t>(rep.violations.size(), 5);
    for (size_t i = 0; i < shown; ++i) {
      if (!w.empty()) w += " | ";
      w += G.to_string(rep.violations[i].a) + " vs " +
           G.to_string(rep.violations[i].b);
    }
    if (rep.violations.size() > shown) w += " | ...";
    r.verdict("magnus-within-region", false,
              std::to_string(rep.violations.size()) +
                  " equal-closure pairs conjugate to neither each other nor "
                  "the inverse",
              w);
  }
  return r;
}

Report cmd_counterexample() {
  Report r;
  r.command = "counterexample";
  r.group = "hw x g3";
  auto rep = counterexample_report(CrystalGroup::hw(), CrystalGroup::gp(3));
  r.info("pair", rep.left_element + "  paired with  " + rep.right_element);
  r.verdict("left-cyclic-index", rep.left_cyclic_index == 4,
            big(rep.left_cyclic_index) + " (holonomy image order " +
                std::to_string(rep.left_holonomy_order) + ")");
  r.verdict("right-cyclic-index", rep.right_cyclic_index == 3,
            big(rep.right_cyclic_index) + " (holonomy image order " +
                std::to_string(rep.right_holonomy_order) + ")");
  r.verdict("left-not-conjugate-to-inverse", !rep.left_conjugate_to_inverse,
            std::to_string(rep.left_misses.size()) +
                " conjugator classes each miss the inverse coset");
  r.verdict("right-not-conjugate-to-inverse", !rep.right_conjugate_to_inverse,
            std::to_string(rep.right_misses.size()) +
                " conjugator classes each miss the inverse coset");
  r.verdict("closures-equal", rep.closures_equal,
            "residues " + big(rep.left_residue) + " mod " +
                big(rep.left_cyclic_index) + " and " + big(rep.right_residue) +
                " mod " + big(rep.right_cyclic_index) + " both exist");
  r.info("combined-residue",
         big(rep.combined_residue) + " mod " + big(rep.combined_modulus));
  r.verdict("subdirect-image",
            rep.subdirect_order == 12 && rep.projects_left && rep.projects_right,
            "closure image has order " + big(rep.subdirect_order) +
                " and projects onto both cyclic factors");
  r.verdict("verdict", rep.magnus_fails(),
            "the direct product fails the Magnus property");
  return r;
}

Report cmd_verify_all() {
  Report r;
  r.command = "verify-all";
  r.group = "all";
  int failures = 0;
  for (const auto& c : run_verification()) {
    r.verdict(c.name, c.pass, c.detail);
    if (!c.pass) ++failures;
  }
  r.info("summary", failures == 0 ? "all checks passed"
                                  : std::to_string(failures) + " check(s) failed");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact conjugacy and normal-closure computations in "
               "crystallographic groups and finite tables"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "emit a machine-readable report");
  // the flag also works after any subcommand name
  auto with_json = [&](CLI::App* sub) {
    sub->add_flag("--json", json_out, "emit a machine-readable report");
    return sub;
  };

  long long cyc_n = 0;
  auto* sc_cyclic = with_json(app.add_subcommand("cyclic", "Magnus verdict for C_n"));
  sc_cyclic->add_option("n", cyc_n, "order of the cyclic group")->required();

  long long pc_m = 0, pc_n = 0;
  auto* sc_pc = with_json(app.add_subcommand("product-cyclic", "Magnus verdict for C_m x C_n"));
  sc_pc->add_option("m", pc_m)->required();
  sc_pc->add_option("n", pc_n)->required();

  std::string fin_name;
  auto* sc_finite = with_json(app.add_subcommand("finite", "Magnus verdict for a catalog group"));
  sc_finite->add_option("name", fin_name,
                        "catalog name, e.g. C12, C4xC3, heis3, quotient:hw:4")
      ->required();

  std::string cry_name;
  auto* sc_crystal = with_json(app.add_subcommand("crystal", "crystallographic group operations"));
  sc_crystal->require_subcommand(1);
  sc_crystal->add_option("group", cry_name, "hw, g3, gp:5 or gp:7")->required();

  std::string eval_file;
  auto* sc_eval = with_json(sc_crystal->add_subcommand("eval", "evaluate words to normal form"));
  // words are taken as raw leftover arguments: a vector option would
  // re-parse "[x,y]" as a bracketed list and split the commutator apart
  sc_eval->allow_extras();
  sc_eval->positionals_at_end();
  sc_eval->add_option("--file", eval_file, "corpus file: one word per line, # comments");

  std::string clo_word;
  auto* sc_closure = with_json(sc_crystal->add_subcommand("closure", "normal closure of a word"));
  sc_closure->add_option("word", clo_word)->required();

  std::string conj_a, conj_b;
  auto* sc_conj = with_json(sc_crystal->add_subcommand("conj", "decide conjugacy of two words"));
  sc_conj->add_option("a", conj_a)->required();
  sc_conj->add_option("b", conj_b)->required();

  ScanOptions scan_opt;
  auto* sc_scan = with_json(sc_crystal->add_subcommand("scan", "search a box for Magnus violations"));
  sc_scan->add_option("--bound", scan_opt.bound, "coordinate bound (default 1)");
  sc_scan->add_option("--budget", scan_opt.budget, "element budget");
  sc_scan->add_option("--max-support", scan_opt.max_support,
                      "limit nonzero coordinates per element");
  sc_scan->add_flag("--translations-only", scan_opt.translations_only,
                    "restrict to the translation subgroup");

  auto* sc_cx = app.add_subcommand("counterexample",
                                   "certified Magnus failure of the rank-3 x p=3 product");
  auto* sc_verify = app.add_subcommand("verify-all", "run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  Report report;
  try {
    if (*sc_cyclic) {
      report = cmd_cyclic(cyc_n);
    } else if (*sc_pc) {
      report = cmd_product_cyclic(pc_m, pc_n);
    } else if (*sc_finite) {
      report = cmd_finite(fin_name);
    } else if (*sc_crystal) {
      const CrystalGroup& G = resolve_crystal(cry_name);
      if (*sc_eval)
        report = cmd_eval(G, sc_eval->remaining(), eval_file);
      else if (*sc_closure)
        report = cmd_closure(G, clo_word);
      else if (*sc_conj)
        report = cmd_conj(G, conj_a, conj_b);
      else
        report = cmd_scan(G, scan_opt);
    } else if (*sc_cx) {
      report = cmd_counterexample();
    } else {
      report = cmd_verify_all();
    }
  } catch (const ParseError& e) {
    std::cerr << "word parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();

  if (json_out)
    render_json(report, ms, std::cout);
  else
    render_text(report, ms, std::cout);
  return report.failed() ? 1 : 0;
}
