#include "chiral/driver.hpp"

#include <chrono>
#include <map>

#include <json.hpp>

#include "chiral/equivariant.hpp"
#include "chiral/error.hpp"
#include "chiral/gamma_chiral.hpp"
#include "chiral/parallel.hpp"
#include "chiral/verify.hpp"

namespace chiral {

using nlohmann::ordered_json;

namespace {

const char* kReportSchema = "chiral-report/1";

struct DegreeWindow {
  int min_degree;
  int max_degree;
};

void check_options(const ModelFile& mf, const RunOptions& opt) {
  if (opt.max_weight < 0) throw InputError("--max-weight is required and must be non-negative");
  if (opt.max_poly_degree < 0) throw InputError("--max-poly-degree is required and must be non-negative");
  if (opt.jobs < 1) throw InputError("--jobs must be at least 1");
  if (opt.min_degree && opt.max_degree && *opt.min_degree > *opt.max_degree)
    throw InputError("empty degree window");
  if (mf.caps && (opt.max_weight > mf.caps->max_weight || opt.max_poly_degree > mf.caps->max_poly_degree))
    throw InputError("requested caps exceed the caps declared in the model file");
}

DegreeWindow window_for(const RunOptions& opt, int lo, int hi) {
  return {opt.min_degree.value_or(lo), opt.max_degree.value_or(hi)};
}

Caps hard_caps(const RunOptions& opt) { return Caps{opt.max_weight + 4, opt.max_poly_degree + 8}; }

SuiteOptions suite_options(const RunOptions& opt, DegreeWindow w) {
  SuiteOptions s;
  s.max_weight = opt.max_weight;
  s.max_poly_degree = opt.max_poly_degree;
  s.min_degree = w.min_degree;
  s.max_degree = w.max_degree;
  s.jobs = opt.jobs;
  return s;
}

std::vector<Section> basis_sections(const AlgebroidData& a) {
  std::vector<Section> out;
  for (int j = 0; j < a.r(); ++j) out.push_back(a.basis_section(j));
  return out;
}

// W(g) tensored with the second factor named by the model file.
EquivariantSetup make_setup(const ModelFile& mf, const Caps& caps) {
  if (!mf.has_lie) throw InputError("this model carries no Lie algebra action");
  if (mf.kind == ModelKind::Weil || (mf.kind == ModelKind::Tensor && mf.factor == TensorFactor::Weil))
    return make_weil_weil_setup(mf.lie, caps);
  if (mf.transformation && mf.algebroid)
    return make_weil_algebroid_setup(mf.lie, *mf.algebroid, basis_sections(*mf.algebroid), caps);
  if (mf.kind == ModelKind::Tensor && mf.factor == TensorFactor::Trivial) {
    EquivariantSetup s;
    s.model = std::make_shared<Model>();
    WeilSpecies ws = s.model->add_weil_factor(mf.lie.dim(), "W");
    GammaSpecies g = s.model->add_gamma_factor(mf.trivial_m, "");
    BcSpecies bc = s.model->add_bc_factor(mf.trivial_r, "");
    s.model->set_caps(caps);
    s.weil = std::make_shared<WeilSystem>(*s.model, ws, mf.lie);
    s.a = weil_module(*s.weil);
    s.b = trivial_module(*s.model, Sector{{g.gamma, bc.c}, true, "gamma-c"}, mf.lie, OpExpr::zero(true));
    s.a_star = weil_wstar(*s.weil);
    return s;
  }
  throw InputError("this model carries no Lie algebra action");
}

// W*-structure of the second factor, when it has one.
std::optional<WStarCarrier> second_wstar(const EquivariantSetup& s) {
  if (s.weil_b) return weil_wstar(*s.weil_b);
  if (s.algebroid) {
    const AlgebroidSystem* sys = s.algebroid.get();
    WStarCarrier w;
    w.module = s.b;
    w.c = [sys](int j, int n) { return mode_op(sys->model(), sys->c(j, n + 1)); };
    w.gamma = [](int, int) { return OpExpr::zero(false); };
    return w;
  }
  return std::nullopt;
}

std::string key_str(const BlockKey& k) {
  return "(w=" + std::to_string(k.weight) + ", deg=" + std::to_string(k.degree) +
         ", pd=" + std::to_string(k.poly_degree) + ")";
}

CheckResult compare_tables(const std::string& name, const std::vector<CohomologyEntry>& a,
                           const std::vector<CohomologyEntry>& b) {
  std::map<BlockKey, std::size_t> dims;
  for (const auto& e : b) dims[e.key] = e.dimension;
  for (const auto& e : a) {
    auto it = dims.find(e.key);
    if (it == dims.end()) return make_check(name, false, "block " + key_str(e.key) + " missing", a.size());
    if (it->second != e.dimension)
      return make_check(name, false,
                        "block " + key_str(e.key) + ": " + std::to_string(e.dimension) + " vs " +
                            std::to_string(it->second),
                        a.size());
  }
  return make_check(name, a.size() == b.size(), "tables cover different blocks", a.size());
}

// Degree-zero basic cohomology of a transformation algebroid is the space of loop-algebra
// invariants in the c-free sector; positive degrees vanish.
void transformation_basic_checks(Report& rep, const EquivariantSetup& s, const std::vector<CohomologyEntry>& hb,
                                 int jobs) {
  const AlgebroidSystem& sys = *s.algebroid;
  const Model& model = sys.model();
  std::vector<std::size_t> inv(hb.size(), 0);
  parallel_for(hb.size(), jobs, [&](std::size_t i) {
    const BlockKey& k = hb[i].key;
    if (k.degree != 0) return;
    int lo = s.b.exact_poly_degree ? k.poly_degree : 0;
    BlockSpace block(model, enumerate_block(model, sys.function_sector(), k.weight, 0, lo, k.poly_degree));
    Carrier c{sys.function_sector(), [&sys, &s](int w) {
                std::vector<OpExpr> ops;
                for (int j = 0; j < s.b.lie.dim(); ++j)
                  for (int n = 0; n <= w; ++n) ops.push_back(transformation_loop_action(sys, j, n));
                return ops;
              }};
    inv[i] = carrier_basis(c, block).size();
  });
  std::string bad0, badp;
  for (std::size_t i = 0; i < hb.size(); ++i) {
    const auto& e = hb[i];
    if (e.key.degree == 0 && e.dimension != inv[i] && bad0.empty())
      bad0 = "block " + key_str(e.key) + ": H = " + std::to_string(e.dimension) + ", invariants " +
             std::to_string(inv[i]);
    if (e.key.degree > 0 && e.dimension != 0 && badp.empty())
      badp = "block " + key_str(e.key) + ": H = " + std::to_string(e.dimension);
  }
  rep.add(make_check("H^0_bas equals the loop-algebra invariants", bad0.empty(), bad0, hb.size()));
  rep.add(make_check("H_bas vanishes in positive degree", badp.empty(), badp, hb.size()));
}

bool zero_anchor(const AlgebroidData& a) {
  for (int i = 0; i < a.m(); ++i)
    for (int j = 0; j < a.r(); ++j)
      if (!a.anchor(i, j).is_zero()) return false;
  return true;
}

ordered_json entries_json(const std::vector<CohomologyEntry>& es) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : es)
    arr.push_back({{"weight", e.key.weight},
                   {"degree", e.key.degree},
                   {"poly-degree", e.key.poly_degree},
                   {"dimension", e.dimension},
                   {"carrier-dim", e.carrier_dim},
                   {"block-dim", e.block_dim}});
  return arr;
}

std::string render(const ModelFile& mf, const char* command, const char* role, const std::string& name,
                   const RunOptions& opt, DegreeWindow w, const Report& rep, bool windowed) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j[role] = name;
  j["model"] = {{"name", mf.name}, {"kind", kind_name(mf.kind)}};
  j["caps"] = {{"max-weight", opt.max_weight}, {"max-poly-degree", opt.max_poly_degree}};
  if (windowed) j["degree-window"] = {{"min", w.min_degree}, {"max", w.max_degree}};
  j["passed"] = rep.passed();
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json cj = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"checked", c.checked}};
    if (!c.passed) {
      cj["witness"] = c.witness;
      if (!c.block.empty()) cj["block"] = c.block;
    }
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  ordered_json tables = ordered_json::array();
  for (const auto& t : rep.tables) tables.push_back({{"name", t.name}, {"entries", entries_json(t.entries)}});
  j["tables"] = tables;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Report verify_dispatch(const ModelFile& mf, const std::string& suite, const RunOptions& opt, DegreeWindow& w,
                       bool& windowed) {
  const int N = opt.max_weight;
  windowed = true;
  if (suite == "free-fields") {
    w = window_for(opt, -2, 2);
    SuiteOptions so = suite_options(opt, w);
    // Composite operators in the Jacobi sample stack up to six modes of level -3.
    Caps caps{N + 6 * so.max_level + 2, opt.max_poly_degree + 12};
    if (mf.kind == ModelKind::Weil) {
      auto wm = make_weil_model(mf.lie, caps);
      so.max_poly_degree = 0;
      return verify_free_fields(*wm.model, so);
    }
    if (mf.kind == ModelKind::Algebroid) {
      auto gm = make_gamma_chiral_model(mf.algebroid->m(), mf.algebroid->r(), caps);
      return verify_free_fields(*gm.model, so);
    }
    throw InputError("suite free-fields needs a weil or algebroid model");
  }
  if (suite == "gamma") {
    if (mf.kind != ModelKind::Algebroid) throw InputError("suite gamma needs an algebroid model");
    w = window_for(opt, 0, 1);
    auto gm = make_gamma_chiral_model(mf.algebroid->m(), mf.algebroid->r(), hard_caps(opt));
    return verify_gamma_relations(gm, suite_options(opt, w));
  }
  if (suite == "weil") {
    if (mf.kind != ModelKind::Weil) throw InputError("suite weil needs a weil model");
    w = window_for(opt, -2, 2);
    auto wm = make_weil_model(mf.lie, hard_caps(opt));
    return verify_weil(*wm.weil, suite_options(opt, w));
  }
  if (suite == "algebroid") {
    if (mf.kind != ModelKind::Algebroid) throw InputError("suite algebroid needs an algebroid model");
    const AlgebroidData& a = *mf.algebroid;
    w = window_for(opt, 0, a.r() + N);
    auto am = make_algebroid_model(a, hard_caps(opt));
    return verify_algebroid(*am.algebroid, sample_sections(a), suite_options(opt, w));
  }
  if (suite == "cartan") {
    w = window_for(opt, -1, 2);
    auto s = make_setup(mf, hard_caps(opt));
    return verify_cartan(s, suite_options(opt, w));
  }
  if (suite == "wstar") {
    auto s = make_setup(mf, hard_caps(opt));
    if (!s.weil_b && !s.algebroid && mf.kind != ModelKind::Weil)
      throw InputError("suite wstar needs a W(g) or transformation algebroid factor");
    w = s.algebroid ? window_for(opt, 0, s.algebroid->data().r() + N) : window_for(opt, -1, 2);
    return verify_wstar(s, suite_options(opt, w));
  }
  if (suite == "atlas") {
    if (mf.kind != ModelKind::Atlas) throw InputError("suite atlas needs an atlas model");
    windowed = false;
    auto sys = make_atlas_system(mf.atlas, hard_caps(opt));
    return verify_atlas(sys, suite_options(opt, {0, 0}));
  }
  throw InputError("unknown suite \"" + suite + "\"");
}

Report chiral_target(const ModelFile& mf, const RunOptions& opt, DegreeWindow& w, bool& windowed) {
  const int N = opt.max_weight, P = opt.max_poly_degree;
  Report rep;
  rep.suite = "chiral";
  if (mf.kind == ModelKind::Weil) {
    // Pure c monomials reach degree dim * (N + 1); gamma_0 makes every weight unbounded in degree.
    w = window_for(opt, 0, 2 * N + 2);
    auto wm = make_weil_model(mf.lie, hard_caps(opt));
    SuiteOptions so = suite_options(opt, w);
    Report wp = verify_wprime_acyclicity(*wm.weil, so);
    rep.add(wp.checks);
    rep.tables = wp.tables;
    // The full algebra in the symmetric window [-max, max].
    GradedComplex c;
    c.model = wm.model.get();
    c.carrier = Carrier{wm.weil->full_sector(), {}};
    c.d = wm.weil->d();
    c.max_weight = N;
    const int full_max = opt.max_degree ? *opt.max_degree : 4;
    c.min_degree = -full_max;
    c.max_degree = full_max;
    rep.notes.push_back("W(g) table covers degrees " + std::to_string(-full_max) + ".." + std::to_string(full_max));
    c.max_poly_degree = 0;
    auto full = graded_cohomology(c, opt.jobs);
    std::string bad;
    for (const auto& e : full) {
      std::size_t want = (e.key.weight == 0 && e.key.degree == 0) ? 1 : 0;
      if (e.dimension != want && bad.empty())
        bad = "block " + key_str(e.key) + ": H = " + std::to_string(e.dimension);
    }
    rep.add(make_check("W(g) has cohomology K in weight 0", bad.empty(), bad, full.size()));
    rep.tables.push_back({"W(g)", full});
    return rep;
  }
  if (mf.kind == ModelKind::Algebroid) {
    const AlgebroidData& a = *mf.algebroid;
    w = window_for(opt, 0, a.r() + N);
    auto am = make_algebroid_model(a, hard_caps(opt));
    GradedComplex c;
    c.model = am.model.get();
    c.carrier = Carrier{am.algebroid->gc_sector(), {}};
    c.d = am.algebroid->d();
    c.max_weight = N;
    c.min_degree = w.min_degree;
    c.max_degree = w.max_degree;
    c.max_poly_degree = P;
    c.exact_poly_degree = a.preserves_poly_degree();
    rep.tables.push_back({"gamma-c", graded_cohomology(c, opt.jobs)});
    return rep;
  }
  if (mf.kind == ModelKind::Atlas) {
    windowed = false;
    auto sys = make_atlas_system(mf.atlas, hard_caps(opt));
    Report r = verify_atlas(sys, suite_options(opt, {0, 0}));
    for (auto& c : r.checks)
      if (c.name == "D preserves global sections" || c.name == "global sections match the chart" ||
          c.name == "glued cohomology matches the chart")
        rep.add(c);
    rep.tables = r.tables;
    return rep;
  }
  w = window_for(opt, 0, 4);
  auto s = make_setup(mf, hard_caps(opt));
  SgtModule ab = tensor_module(s.a, s.b);
  Window win{N, P, w.min_degree, w.max_degree};
  rep.tables.push_back({"W(g) (x) B", graded_cohomology(module_complex(ab, Carrier{ab.sector, {}}, win), opt.jobs)});
  return rep;
}

Report equivariant_target(const ModelFile& mf, const std::string& target, const RunOptions& opt, DegreeWindow& w) {
  const int N = opt.max_weight, P = opt.max_poly_degree;
  if (mf.kind == ModelKind::Atlas || (mf.kind == ModelKind::Algebroid && !mf.transformation))
    throw InputError("target " + target + " needs a Lie algebra action");
  if (target == "small-cartan" && !mf.lie.is_abelian())
    throw InputError("the small Cartan model needs an abelian Lie algebra");
  w = window_for(opt, 0, 4);
  Window win{N, P, w.min_degree, w.max_degree};
  // For a weil model the module is W(g) itself, acted on by a second copy.
  auto s = make_setup(mf, hard_caps(opt));
  const bool wstar = s.weil_b || s.algebroid;
  Report rep;
  rep.suite = target;

  auto hb = [&] { return basic_cohomology(s.b, win, opt.jobs); };
  auto hg = [&] { return chiral_equivariant_cohomology(*s.weil, s.b, win, opt.jobs); };

  if (target == "basic") {
    auto t = hb();
    rep.tables.push_back({"H_bas", t});
    if (s.algebroid) transformation_basic_checks(rep, s, t, opt.jobs);
    return rep;
  }
  if (target == "equivariant") {
    auto g = hg();
    rep.tables.push_back({"H_G", g});
    if (mf.lie.is_abelian() && wstar) {
      auto b = hb();
      rep.tables.push_back({"H_bas", b});
      rep.add(compare_tables("H_bas equals H_G", b, g));
      if (s.algebroid) transformation_basic_checks(rep, s, b, opt.jobs);
    }
    if (mf.lie.is_abelian() && s.algebroid && zero_anchor(s.algebroid->data())) {
      // Trivial dressing: everything c-free is invariant, so H^0_G is the function sector.
      const AlgebroidSystem& sys = *s.algebroid;
      std::string bad;
      for (const auto& e : g) {
        std::size_t want = 0;
        if (e.key.degree == 0) {
          int lo = s.b.exact_poly_degree ? e.key.poly_degree : 0;
          want = enumerate_block(sys.model(), sys.function_sector(), e.key.weight, 0, lo, e.key.poly_degree).size();
        }
        if (e.dimension != want && bad.empty())
          bad = "block " + key_str(e.key) + ": H = " + std::to_string(e.dimension) + ", expected " +
                std::to_string(want);
      }
      rep.add(make_check("commutative action: H_G is the function sector in degree 0", bad.empty(), bad, g.size()));
    }
    if (mf.kind == ModelKind::Tensor && mf.factor == TensorFactor::Trivial) {
      // Zero action and zero differential: degree 0 at weight 0 is the module block itself.
      std::string bad;
      std::size_t n = 0;
      for (const auto& e : g) {
        if (e.key.weight != 0 || e.key.degree != 0) continue;
        ++n;
        int lo = s.b.exact_poly_degree ? e.key.poly_degree : 0;
        std::size_t want = enumerate_block(*s.model, s.b.sector, 0, 0, lo, e.key.poly_degree).size();
        if (e.dimension != want && bad.empty())
          bad = "block " + key_str(e.key) + ": H = " + std::to_string(e.dimension) + ", module block " +
                std::to_string(want);
      }
      rep.add(make_check("zero action: H^0_G at weight 0 is the module block", bad.empty(), bad, n));
    }
    return rep;
  }
  // small-cartan
  auto g = hg();
  auto small = graded_cohomology(small_cartan_model(*s.weil, s.b, win), opt.jobs);
  rep.tables.push_back({"small Cartan", small});
  rep.tables.push_back({"H_G", g});
  rep.add(compare_tables("small Cartan model computes H_G", small, g));
  if (auto ws = second_wstar(s)) {
    auto cp = graded_cohomology(cartan_prime_complex(*ws, *s.weil, win), opt.jobs);
    rep.tables.push_back({"C'", cp});
    rep.add(compare_tables("C' computes H_G", cp, g));
  }
  return rep;
}

}  // namespace

RunResult run_verify(const ModelFile& mf, const std::string& suite, const RunOptions& opt) {
  check_options(mf, opt);
  auto t0 = std::chrono::steady_clock::now();
  DegreeWindow w{0, 0};
  bool windowed = true;
  RunResult r;
  r.report = verify_dispatch(mf, suite, opt, w, windowed);
  r.report.suite = suite;
  r.seconds = seconds_since(t0);
  r.json = render(mf, "verify", "suite", suite, opt, w, r.report, windowed);
  return r;
}

RunResult run_cohomology(const ModelFile& mf, const std::string& target, const RunOptions& opt) {
  check_options(mf, opt);
  auto t0 = std::chrono::steady_clock::now();
  DegreeWindow w{0, 0};
  bool windowed = true;
  RunResult r;
  if (target == "chiral")
    r.report = chiral_target(mf, opt, w, windowed);
  else if (target == "basic" || target == "equivariant" || target == "small-cartan")
    r.report = equivariant_target(mf, target, opt, w);
  else
    throw InputError("unknown target \"" + target + "\"");
  r.report.suite = target;
  r.seconds = seconds_since(t0);
  r.json = render(mf, "cohomology", "target", target, opt, w, r.report, windowed);
  return r;
}

}  // namespace chiral
