#include "etw/cli/commands.hpp"

#include "etw/cli/jobs.hpp"
#include "etw/domains/alpha_c.hpp"
#include "etw/kernel/library.hpp"
#include "etw/kernel/machine.hpp"
#include "etw/kernel/smn.hpp"
#include "etw/riceshapiro/riceshapiro.hpp"
#include "etw/spaces/constructions.hpp"
#include "etw/trees/sigma_t.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace etw::cli {

std::uint64_t default_budget() {
  const char* env = std::getenv("ETW_DEFAULT_BUDGET");
  if (!env) return kDefaultBudget;
  std::string s(env);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("ETW_DEFAULT_BUDGET must be a positive integer, got '" + s + "'");
  try {
    auto v = std::stoull(s);
    if (v == 0) throw UsageError("ETW_DEFAULT_BUDGET must be positive");
    return v;
  } catch (const std::out_of_range&) {
    throw UsageError("ETW_DEFAULT_BUDGET is out of range");
  }
}

int exit_status(Verdict v) {
  switch (v) {
    case Verdict::Verified: return 0;
    case Verdict::Refuted: return 1;
    case Verdict::Unknown: return 2;
  }
  return 2;
}

Verdict Report::verdict() const {
  Verdict v = Verdict::Verified;
  for (const auto& c : checks) v = combine(v, c.result.verdict);
  return v;
}

Json Report::to_json() const {
  Json j;
  j["tool"] = "etw";
  j["version"] = kToolVersion;
  j["verb"] = verb;
  j["target"] = target;
  j["instance_digest"] = instance_digest;
  j["settings"] = {{"budget", budget},
                   {"stages", stages},
                   {"bound", bound},
                   {"defaults", {{"budget", default_budget}, {"stages", kDefaultStages}, {"bound", kDefaultBound}}}};
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json r;
    r["check"] = c.result.check;
    r["verdict"] = verdict_name(c.result.verdict);
    if (!c.result.witness.is_null()) r["witness"] = c.result.witness;
    r["budget"] = c.budget;
    r["saturation_stage"] = c.result.saturation_stage;
    cs.push_back(std::move(r));
  }
  j["checks"] = std::move(cs);
  j["verdict"] = verdict_name(verdict());
  return j;
}

Json Report::metadata() const {
  Json j;
  double total = 0;
  Json per = Json::array();
  for (const auto& c : checks) {
    per.push_back({{"check", c.result.check}, {"wall_ms", c.wall_ms}});
    total += c.wall_ms;
  }
  j["wall_ms"] = total;
  j["checks"] = std::move(per);
  return j;
}

std::string Report::text() const {
  std::ostringstream o;
  o << "etw " << verb;
  for (const auto& t : target) o << " " << t;
  o << "\n";
  for (const auto& c : checks) {
    o << "  " << c.result.check << ": " << verdict_name(c.result.verdict);
    if (c.result.saturation_stage) o << " (saturation " << c.result.saturation_stage << ")";
    o << "\n";
  }
  o << "verdict: " << verdict_name(verdict()) << "\n";
  return o.str();
}

namespace {

using spaces::PointSet;

struct Ctx {
  const InstanceFile& inst;
  const std::vector<std::string>& target;
  std::uint64_t budget, stages, bound;
  const Options& opts;
  Report& report;

  void add(const std::function<CheckResult()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    auto t1 = std::chrono::steady_clock::now();
    report.checks.push_back({std::move(r), budget, std::chrono::duration<double, std::milli>(t1 - t0).count()});
  }
  const std::string& arg(std::size_t i, const char* what) const {
    if (i >= target.size()) throw UsageError(std::string("missing ") + what + " for '" + target[0] + "'");
    return target[i];
  }
  void no_more(std::size_t n) const {
    if (target.size() > n) throw UsageError("unexpected argument '" + target[n] + "'");
  }
  std::uint64_t number(std::size_t i, const char* what) const {
    const auto& s = arg(i, what);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(std::string(what) + " must be a number, got '" + s + "'");
    return std::stoull(s);
  }
};

struct SpaceBundle {
  spaces::Space space;
  spaces::ModularWitness witness;
};

SpaceBundle space_of_tree(const trees::Tree& t) {
  if (t.kind() != trees::Tree::Kind::Explicit) throw UsageError("spaces need an explicit (finite) tree");
  auto ts = spaces::build_X_T(t);
  return {std::move(ts.space), std::move(ts.witness)};
}

SpaceBundle space_of_domain(const domains::Domain& d) {
  auto ds = domains::domain_to_modular(d);
  return {std::move(ds.space), std::move(ds.witness)};
}

SpaceBundle resolve_space(const InstanceFile& inst, const std::string& name) {
  const auto& s = inst.space(name);
  if (s.kind == "tree") return space_of_tree(inst.tree(s.ref));
  return space_of_domain(inst.domain(s.ref));
}

CheckResult describe_space(const SpaceBundle& b) {
  CheckResult r{"construct_space", Verdict::Verified, nullptr, 0};
  Json o = Json::array();
  for (const auto& on : b.witness.o) o.push_back(on);
  r.witness = {{"name", b.space.name}, {"points", b.space.points}, {"basis", b.space.basis},
               {"b", b.witness.b},     {"O", std::move(o)}};
  return r;
}

CheckResult intersection_identities(const SpaceBundle& b, std::size_t max_size) {
  CheckResult r{"intersection_identity", Verdict::Verified, nullptr, 0};
  const auto idx = b.space.check_indices();
  std::uint64_t count = 0;
  std::function<bool(std::size_t, FinSet&)> rec = [&](std::size_t from, FinSet& v) {
    auto c = spaces::intersection_identity_check(b.space, b.witness, v);
    ++count;
    if (c.verdict != Verdict::Verified) {
      r.verdict = c.verdict;
      r.witness = {{"V", v}, {"detail", c.witness}};
      return false;
    }
    if (v.size() == max_size) return true;
    for (std::size_t i = from; i < idx.size(); ++i) {
      v.insert(idx[i]);
      bool ok = rec(i + 1, v);
      v.erase(idx[i]);
      if (!ok) return false;
    }
    return true;
  };
  FinSet v;
  if (rec(0, v)) r.witness = {{"sets_checked", count}, {"max_size", max_size}};
  return r;
}

void space_checks(Ctx& c, const SpaceBundle& b) {
  c.add([&] { return spaces::ee_space_check(b.space); });
  c.add([&] { return spaces::modular_check(b.space, b.witness); });
  c.add([&] { return intersection_identities(b, 3); });
}

const riceshapiro::BranchingInstance& branching_fixture(const std::string& name) {
  static const auto fx = riceshapiro::branching_fixtures();
  for (const auto& f : fx)
    if (f.name == name) return f;
  std::string known;
  for (const auto& f : fx) known += " " + f.name;
  throw UsageError("no branching fixture '" + name + "'; known:" + known);
}

CheckResult branching_record(const riceshapiro::BranchingInstance& inst, std::uint64_t budget, std::uint64_t bound) {
  auto r = riceshapiro::branching(inst, budget, bound);
  auto w = r.to_json();
  w["fixture"] = inst.name;
  return {"branching", r.verdict, std::move(w), r.p.value_or(0)};
}

std::size_t element_index(const domains::Domain& d, const std::string& name) {
  const auto& ns = d.names();
  auto it = std::find(ns.begin(), ns.end(), name);
  if (it == ns.end()) throw UsageError("domain has no element '" + name + "'");
  return static_cast<std::size_t>(it - ns.begin());
}

// Every predicate K on the points: representation, upward closure, the
// index-set enumerator and, for non-open K, the re-checked trace.
CheckResult rice_shapiro_record(const SpaceBundle& b, std::uint64_t budget) {
  const auto& x = b.space;
  CheckResult r{"rice_shapiro", Verdict::Verified, nullptr, 0};
  if (x.size() > 16) {
    r.verdict = Verdict::Unknown;
    r.witness = {{"reason", "more than 16 points"}};
    return r;
  }
  std::uint64_t open = 0, traces = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
    PointSet k(x.size(), mask);
    auto fail = [&](const char* what) {
      r.verdict = Verdict::Refuted;
      r.witness = {{"K", spaces::point_names(x, k)}, {"failed", what}};
      return r;
    };
    auto rep = riceshapiro::rs_forward(x, b.witness, k);
    bool up = riceshapiro::upward_closure_check(x, k).verdict == Verdict::Verified;
    bool rep_ok = rep.verdict == Verdict::Verified;
    auto ix = riceshapiro::index_set_consistency(x, b.witness, k, budget);
    if ((ix.verdict == Verdict::Verified) != up) return fail("index set enumerator against upward closure");
    if (rep_ok) {
      ++open;
      if (!up) return fail("representation of a set that is not upward closed");
      continue;
    }
    if (!rep.violation) return fail("refutation without a violation");
    auto a = rep.violation->first;
    auto t = riceshapiro::non_open_witness(x, b.witness, k, a);
    if (t.precondition) {
      ++traces;
      if (riceshapiro::non_open_trace_check(x, b.witness, k, a, t).verdict != Verdict::Verified)
        return fail("non-open trace");
    }
  }
  r.witness = {{"predicates", std::uint64_t{1} << x.size()}, {"open", open}, {"traces_checked", traces}};
  r.saturation_stage = std::uint64_t{1} << x.size();
  return r;
}

CheckResult wn_record(const numberings::WnFamily& f, std::uint64_t budget, std::uint64_t bound) {
  CheckResult r{"wn", Verdict::Verified, nullptr, 0};
  if (!f.members) {
    r.verdict = Verdict::Unknown;
    r.witness = {{"reason", "family has no explicit member list"}};
    return r;
  }
  std::vector<numberings::CeSet> cands;
  for (const auto& m : *f.members) cands.push_back(numberings::CeSet::finite(m));
  auto recs = numberings::wn_check(f, cands, budget, bound);
  Json rows = Json::array();
  for (std::size_t i = 0; i < recs.size(); ++i) {
    r.verdict = combine(r.verdict, recs[i].verdict);
    Json row{{"member", (*f.members)[i]}, {"verdict", verdict_name(recs[i].verdict)}, {"image", recs[i].image}};
    if (!recs[i].note.empty()) row["note"] = recs[i].note;
    rows.push_back(std::move(row));
  }
  r.witness = {{"records", std::move(rows)}};
  return r;
}

// ---------------------------------------------------------------- verbs

void construct(Ctx& c) {
  const auto& kind = c.arg(0, "target");
  if (kind == "space-from-tree" || kind == "space-from-domain") {
    const auto& name = c.arg(1, "name");
    c.no_more(2);
    auto b = kind == "space-from-tree" ? space_of_tree(c.inst.tree(name)) : space_of_domain(c.inst.domain(name));
    c.add([&] { return describe_space(b); });
    c.add([&] { return spaces::ee_space_check(b.space); });
    c.add([&] { return spaces::modular_check(b.space, b.witness); });
  } else if (kind == "branching") {
    const auto& f = branching_fixture(c.arg(1, "fixture"));
    c.no_more(2);
    c.add([&] {
      auto e = riceshapiro::branching_program(f);
      auto in_w = kernel::run_steps(f.w, e.code, c.budget);
      CheckResult r{"branching_program", in_w.halted() ? Verdict::Verified : Verdict::Unknown, nullptr, 0};
      r.witness = {{"fixture", f.name}, {"e", to_string(e.code)}};
      if (in_w.halted()) {
        r.witness["p"] = in_w.steps_used;
        r.saturation_stage = in_w.steps_used;
      }
      return r;
    });
  } else if (kind == "product") {
    auto fam = c.inst.family(c.arg(1, "family"));
    c.no_more(2);
    c.add([&] {
      auto pf = riceshapiro::product_family(fam);
      CheckResult r{"product_family", Verdict::Verified, nullptr, 0};
      r.witness = {{"sigma_star", to_string(pf.sigma_star.code)}};
      if (pf.star.members) r.witness["members"] = *pf.star.members;
      return r;
    });
  } else if (kind == "sigma-t") {
    const auto& t = c.inst.tree(c.arg(1, "tree"));
    c.no_more(2);
    c.add([&] {
      CheckResult r{"sigma_t_program", Verdict::Verified, nullptr, 0};
      r.witness = {{"sigma", to_string(trees::sigma_T_program(t).code)}};
      if (t.kind() == trees::Tree::Kind::Explicit) r.witness["members"] = trees::s_T_members(t);
      return r;
    });
  } else if (kind == "sigma-c") {
    const auto& d = c.inst.domain(c.arg(1, "domain"));
    c.no_more(2);
    c.add([&] {
      auto f = domains::continuous_family(d);
      CheckResult r{"sigma_c_program", Verdict::Verified, nullptr, 0};
      r.witness = {{"sigma", to_string(f.sigma.code)}};
      if (f.members) r.witness["members"] = *f.members;
      return r;
    });
  } else if (kind == "fixpoint") {
    const auto& f = c.inst.program(c.arg(1, "program"));
    c.no_more(2);
    c.add([&] {
      auto e = kernel::fixpoint(f);
      CheckResult r{"fixpoint", Verdict::Verified, nullptr, c.bound};
      r.witness = {{"e", to_string(e.code)}};
      auto fe = kernel::run_steps(f, e.code, c.budget);
      if (!fe.halted()) {
        r.verdict = Verdict::Unknown;
        r.witness["reason"] = "transformer did not halt on e";
        return r;
      }
      kernel::ProgramIndex g{*fe.value};
      Json rows = Json::array();
      for (std::uint64_t x = 0; x <= c.bound; ++x) {
        auto a = kernel::run_steps(e, x, c.budget), b = kernel::run_steps(g, x, c.budget);
        if (a.halted() && b.halted() && *a.value != *b.value) r.verdict = Verdict::Refuted;
        if (a.halted() != b.halted()) r.verdict = combine(r.verdict, Verdict::Unknown);
        rows.push_back({x, a.halted() ? Json(to_string(*a.value)) : Json(nullptr),
                        b.halted() ? Json(to_string(*b.value)) : Json(nullptr)});
      }
      r.witness["values"] = std::move(rows);
      return r;
    });
  } else {
    throw UsageError("unknown construct target '" + kind + "'");
  }
}

void enumerate(Ctx& c) {
  const auto& kind = c.arg(0, "target");
  std::optional<EnumerationJob> job;
  if (kind == "we") {
    job = EnumerationJob::we(c.inst.program(c.arg(1, "program")));
    c.no_more(2);
  } else if (kind == "sigma-t") {
    job = EnumerationJob::sigma_t(c.inst.tree(c.arg(1, "tree")), c.inst.program(c.arg(2, "program")));
    c.no_more(3);
  } else if (kind == "alpha-c") {
    const auto& d = c.inst.domain(c.arg(1, "domain"));
    job = EnumerationJob::alpha_c(d, element_index(d, c.arg(2, "element")));
    c.no_more(3);
  } else if (kind == "trees") {
    auto n = c.number(1, "vertex count"), k = c.number(2, "alphabet size");
    c.no_more(3);
    c.add([&] {
      CheckResult r{"trees", Verdict::Verified, nullptr, n};
      std::vector<std::uint64_t> by_size(n + 1, 0);
      for (const auto& t : trees::enumerate_trees(n, k)) ++by_size[t.vertices().size()];
      r.witness = {{"by_vertices", by_size}};
      return r;
    });
    return;
  } else if (kind == "domains") {
    auto n = c.number(1, "element count");
    c.no_more(2);
    if (n > 6) throw UsageError("domain enumeration is limited to 6 elements");
    c.add([&] {
      CheckResult r{"domains", Verdict::Verified, nullptr, n};
      std::vector<std::uint64_t> by_size(n + 1, 0);
      for (const auto& d : domains::enumerate_domains(n)) ++by_size[d.size()];
      r.witness = {{"by_elements", by_size}};
      return r;
    });
    return;
  } else {
    throw UsageError("unknown enumerate target '" + kind + "'");
  }
  try {
    if (c.opts.resume) job->resume(load_snapshot(*c.opts.resume));
    c.add([&] {
      job->run_to(c.stages);
      return job->result();
    });
    if (c.opts.snapshot) save_snapshot(*c.opts.snapshot, job->state());
  } catch (const SnapshotError& e) {
    throw UsageError(e.what());
  }
}

void verify(Ctx& c) {
  const auto& kind = c.arg(0, "target");
  if (kind == "space-from-tree" || kind == "space-from-domain") {
    const auto& name = c.arg(1, "name");
    c.no_more(2);
    auto b = kind == "space-from-tree" ? space_of_tree(c.inst.tree(name)) : space_of_domain(c.inst.domain(name));
    space_checks(c, b);
  } else if (kind == "space") {
    auto b = resolve_space(c.inst, c.arg(1, "space"));
    c.no_more(2);
    space_checks(c, b);
  } else if (kind == "branching") {
    const auto& f = branching_fixture(c.arg(1, "fixture"));
    c.no_more(2);
    c.add([&] { return branching_record(f, c.budget, c.bound); });
  } else if (kind == "rice-shapiro") {
    auto b = resolve_space(c.inst, c.arg(1, "space"));
    c.no_more(2);
    c.add([&] { return rice_shapiro_record(b, c.budget); });
  } else if (kind == "wn") {
    auto f = c.inst.family(c.arg(1, "family"));
    c.no_more(2);
    c.add([&] { return wn_record(f, c.budget, c.bound); });
  } else if (kind == "product") {
    auto f = c.inst.family(c.arg(1, "family"));
    c.no_more(2);
    c.add([&] {
      auto r = wn_record(riceshapiro::product_family(f).star, c.budget, c.bound);
      r.check = "product_wn";
      return r;
    });
  } else {
    throw UsageError("unknown verify target '" + kind + "'");
  }
}

const trees::Tree& demo_tree() {
  static const auto t = trees::Tree::explicit_tree({{}, {0}, {1}, {0, 0}});
  return t;
}

void demo(Ctx& c) {
  const auto& name = c.arg(0, "demo name");
  c.no_more(1);
  if (name == "branching-basic") {
    const auto& f = branching_fixture("zero-to-zero-one");
    c.add([&] { return branching_record(f, c.budget, c.bound); });
  } else if (name == "rs-forward-tree") {
    auto ts = spaces::build_X_T(demo_tree());
    const auto& x = ts.space;
    auto at = [&](std::initializer_list<trees::FiniteSeq> vs) {
      PointSet k(x.size());
      for (const auto& v : vs) k.set(std::find(ts.vertices.begin(), ts.vertices.end(), v) - ts.vertices.begin());
      return k;
    };
    // An upward closed K gets a representation; K = {p_(0)} does not.
    c.add([&] {
      auto k = at({{0}, {0, 0}});
      auto rep = riceshapiro::rs_forward(x, ts.witness, k);
      Json w = rep.to_json(x);
      w["K"] = spaces::point_names(x, k);
      bool exact = spaces::eff_open_denotation(x, rep.basis_indices) == k;
      return CheckResult{"rs_forward_open", exact ? rep.verdict : Verdict::Refuted, std::move(w), 0};
    });
    c.add([&] {
      auto k = at({{0}});
      auto rep = riceshapiro::rs_forward(x, ts.witness, k);
      Json w = rep.to_json(x);
      w["K"] = spaces::point_names(x, k);
      // Expected outcome: no representation, with the violating pair.
      return CheckResult{"rs_forward_not_open",
                         rep.verdict == Verdict::Refuted && rep.violation ? Verdict::Verified : Verdict::Refuted,
                         std::move(w), 0};
    });
  } else if (name == "non-open-trace") {
    auto ts = spaces::build_X_T(demo_tree());
    const auto& x = ts.space;
    PointSet k(x.size());
    std::size_t a = std::find(ts.vertices.begin(), ts.vertices.end(), trees::FiniteSeq{0}) - ts.vertices.begin();
    k.set(a);
    c.add([&] {
      auto t = riceshapiro::non_open_witness(x, ts.witness, k, a);
      auto chk = riceshapiro::non_open_trace_check(x, ts.witness, k, a, t);
      Json w = t.to_json(x);
      w["K"] = spaces::point_names(x, k);
      w["a"] = x.points[a];
      return CheckResult{"non_open_trace", t.precondition ? chk.verdict : Verdict::Refuted, std::move(w),
                         t.records.size()};
    });
  } else if (name == "diagonal-demo") {
    c.add([&] {
      std::vector<FinSet> s{{0}, {1}};
      numberings::PrincipalNumbering g(numberings::discrete_family(s, s));
      auto surj = numberings::surjectivity_check(g, 40, 4, c.budget);
      std::vector<Nat> idx{0, 1, 2};
      for (const auto& i : surj.index)
        if (i) idx.push_back(*i);
      auto eq = numberings::discrete_equality_witness(g, s);
      auto rep = riceshapiro::diagonal_class_demo(g, eq, idx, 4, c.budget);
      return CheckResult{"diagonal_class", rep.verdict(), rep.to_json(), rep.pairs_checked};
    });
  } else {
    throw UsageError("unknown demo '" + name + "'; known: branching-basic rs-forward-tree diagonal-demo non-open-trace");
  }
}

}  // namespace

Report run_command(const std::string& verb, const std::vector<std::string>& target, const Options& opts,
                   const InstanceFile& inst) {
  if (target.empty()) throw UsageError("missing target");
  // A scenario carries its own verb, target and budgets; flags still win.
  if (target[0] == "scenario") {
    if (target.size() != 2) throw UsageError("usage: <verb> scenario NAME");
    const ScenarioDecl* sc;
    try {
      sc = &inst.scenario(target[1]);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    Options o = opts;
    if (!o.budget) o.budget = sc->budget;
    if (!o.stages) o.stages = sc->stages;
    if (!o.bound) o.bound = sc->bound;
    if (sc->target.at(0) == "scenario") throw UsageError("scenarios cannot nest");
    auto r = run_command(sc->verb, sc->target, o, inst);
    r.target.insert(r.target.begin(), {"scenario", target[1]});
    return r;
  }

  Report rep;
  rep.verb = verb;
  rep.target = target;
  rep.instance_digest = inst.digest();
  rep.default_budget = default_budget();
  rep.budget = opts.budget.value_or(rep.default_budget);
  rep.stages = opts.stages.value_or(kDefaultStages);
  rep.bound = opts.bound.value_or(kDefaultBound);
  if (rep.budget == 0) throw UsageError("--budget must be positive");
  if ((opts.snapshot || opts.resume) && verb != "enumerate")
    throw UsageError("--snapshot and --resume apply to enumerate jobs");

  Ctx c{inst, target, rep.budget, rep.stages, rep.bound, opts, rep};
  try {
    if (verb == "construct") construct(c);
    else if (verb == "enumerate") enumerate(c);
    else if (verb == "verify") verify(c);
    else if (verb == "demo") demo(c);
    else throw UsageError("unknown verb '" + verb + "'");
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  return rep;
}

}  // namespace etw::cli
