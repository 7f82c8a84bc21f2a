#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "ftinv/ftinv.hpp"

using namespace ftinv;

namespace {

enum Exit { kOk = 0, kFail = 1, kInvalid = 2, kCap = 3 };

struct Params {
  long p = 5, d = 0, n = 1;
};

bool is_seifert(const nlohmann::json& j) { return j.is_object() && j.contains("V"); }

FormalSum<SurgeryPresentation> manifold_element(const SurgeryPresentation& M) {
  auto L = M.link.role_selector(Role::surgery);
  if (L.count() == 0) {
    FormalSum<SurgeryPresentation> x;
    x.add(M, 1);
    return x;
  }
  return bracket(M, L);
}

nlohmann::json cyclotomic_json(const CyclotomicInt& a) {
  nlohmann::json basis = nlohmann::json::array();
  for (auto& c : a.coeffs()) basis.push_back(c.str());
  return {{"p", a.p()}, {"h_basis", basis}, {"value", a.str()}};
}

nlohmann::json valuation_json(long v) { return v == kInfinity ? nlohmann::json("inf") : nlohmann::json(v); }

nlohmann::json run_invariant(const std::string& kind, const nlohmann::json& in, const Params& P) {
  if (kind == "conway") {
    if (is_seifert(in)) return {{"poly", conway_alternating(seifert_from_json(in)).str()}};
    return {{"poly", conway_link(link_from_json(in)).str()}};
  }
  if (kind == "c2n" || kind == "lescop") {
    Rational v;
    if (is_seifert(in)) {
      auto M = seifert_manifold(seifert_from_json(in));
      auto x = bracket(M, SublinkSelector(M.P.surgeries.size(), true));
      Invariant<SeifertManifold, Rational> phi{kind, [&](const SeifertManifold& m) {
                                                 return kind == "c2n" ? c2n(m, static_cast<int>(P.n)) : lescop_b1_1(m);
                                               },
                                               std::nullopt};
      v = evaluate(phi, x);
    } else {
      SurgeryPresentation M{link_from_json(in)};
      if (M.link.role_selector(Role::surgery).count())
        throw ValidationError(kind + ": brackets need a Seifert presentation input");
      v = kind == "c2n" ? c2n_diagram(manifold_link(M), static_cast<int>(P.n)) : lescop_b1_1(M);
    }
    nlohmann::json j{{"value", to_str(v)}};
    if (kind == "c2n") j["n"] = P.n;
    return j;
  }
  if (kind == "tau" || kind == "tau_d" || kind == "o_p" || kind == "d_p") {
    auto x = manifold_element({link_from_json(in)});
    auto t = tau_p(x, P.p);
    if (kind == "tau") return cyclotomic_json(t);
    if (kind == "tau_d") {
      auto r = pi_d(t, P.d);
      return {{"p", P.p}, {"d", P.d}, {"residue", r.value.str()}, {"modulus", r.modulus.str()}};
    }
    long o = v_h(t);
    if (kind == "o_p") return {{"p", P.p}, {"order", valuation_json(o)}};
    long b = bp(x, P.p);
    return {{"p", P.p}, {"order", valuation_json(o)}, {"b_p", b}, {"depth", valuation_json(p_depth_from(o, b, P.p))}};
  }
  if (kind == "rochlin") {
    auto S = spin_from_json(in);
    auto L = S.presentation.link.role_selector(Role::surgery);
    return {{"mu", L.count() ? rochlin(spin_bracket(S, L)) : rochlin(S)}};
  }
  if (kind == "arf") return {{"arf", arf_proper(link_from_json(in))}};
  throw ValidationError("unknown invariant: " + kind);
}

std::string join(const std::vector<BigInt>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].str();
  return s;
}

int guarded(const std::function<int()>& f) {
  try {
    return f();
  } catch (const EngineCapError& e) {
    std::cerr << "engine cap: " << e.what() << "\n";
    return kCap;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-type invariants of 3-manifolds"};
  app.require_subcommand(1);
  Params P;
  bool json = false, mod2 = false;
  unsigned long seed = kDefaultSeed;
  std::string fixtures_dir;
  int m = 1, lmax = 5;

  auto* inv = app.add_subcommand("invariant", "compute an invariant of an input file");
  std::string kind, file;
  inv->add_option("kind", kind, "conway|c2n|lescop|tau|tau_d|o_p|d_p|rochlin|arf")
      ->required()
      ->check(CLI::IsMember({"conway", "c2n", "lescop", "tau", "tau_d", "o_p", "d_p", "rochlin", "arf"}));
  inv->add_option("file", file, "link, spin or Seifert JSON")->required();
  inv->add_option("--p", P.p, "odd prime");
  inv->add_option("--d", P.d, "truncation degree");
  inv->add_option("--n", P.n, "Conway coefficient index");
  inv->add_flag("--json", json, "JSON output (always on)");

  auto* table = app.add_subcommand("table", "diagram quotient table");
  table->add_option("--m", m, "number of colours")->check(CLI::Range(0, 4));
  table->add_option("--lmax", lmax, "largest degree")->check(CLI::NonNegativeNumber);
  table->add_flag("--mod-2-torsion", mod2, "list only odd torsion");
  table->add_flag("--json", json, "JSON output");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suites));
  verify->add_option("--seed", seed, "seed for randomized suites");
  verify->add_option("--fixtures", fixtures_dir, "fixture root (default $FTINV_FIXTURES)");
  verify->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  if (*inv)
    return guarded([&] {
      auto j = run_invariant(kind, load_json(file), P);
      std::cout << j.dump() << "\n";
      return kOk;
    });

  if (*table)
    return guarded([&] {
      if (lmax > kDiagramDegreeCap) throw EngineCapError("table: lmax above " + std::to_string(kDiagramDegreeCap));
      nlohmann::json rows = nlohmann::json::array();
      if (!json) std::cout << "l,rank,torsion\n";
      for (int l = 0; l <= lmax; ++l) {
        auto q = quotient_structure(m, l, true);
        auto tors = mod2 ? odd_part(q.torsion) : q.torsion;
        if (json) {
          nlohmann::json t = nlohmann::json::array();
          for (auto& f : tors) t.push_back(f.str());
          rows.push_back({{"l", l}, {"rank", q.rank}, {"torsion", t}});
        } else {
          std::cout << l << "," << q.rank << "," << join(tors, " ") << "\n";
        }
      }
      if (json) std::cout << nlohmann::json{{"m", m}, {"lmax", lmax}, {"rows", rows}}.dump() << "\n";
      return kOk;
    });

  return guarded([&] {
    FixtureSet fx(fixture_root(fixtures_dir));
    std::vector<std::string> run = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    nlohmann::json out = nlohmann::json::array();
    bool ok = true;
    for (auto& s : run) {
      auto t0 = std::chrono::steady_clock::now();
      auto r = run_suite(s, seed, fx);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ok = ok && r.ok();
      if (json) {
        out.push_back(r.to_json());
        continue;
      }
      std::cout << "suite " << r.suite << " seed " << r.seed << "\n";
      for (auto& a : r.items)
        std::cout << (a.pass ? "  PASS " : "  FAIL ") << a.name << (a.detail.empty() ? "" : "  [" + a.detail + "]")
                  << "\n";
      std::cout << "  " << (r.ok() ? "ok" : "FAILED") << " in " << secs << "s\n";
    }
    if (json) std::cout << out.dump() << "\n";
    return ok ? kOk : kFail;
  });
}
