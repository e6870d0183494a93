#include "cremona/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "cremona/classify.hpp"
#include "cremona/lattice.hpp"
#include "cremona/motivic.hpp"

namespace cremona::report {

namespace {

using nlohmann::json;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

json json_int(const bigint& v) {
  if (v <= bigint(INT64_MAX) && v >= bigint(INT64_MIN)) return to_int64(v);
  return v.str();
}

json json_matrix(const IntMatrix& a) {
  json rows = json::array();
  for (const auto& row : a) {
    json r = json::array();
    for (const bigint& v : row) r.push_back(json_int(v));
    rows.push_back(r);
  }
  return rows;
}

std::string dim_deg(const HilbertData& h) {
  return "(" + std::to_string(h.dimension) + ", " + h.degree.str() + ")";
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Appends a record timed by `watch` (restarted afterwards so consecutive
// checks are timed back to back).
class Recorder {
 public:
  explicit Recorder(VerificationReport& r) : r_(r) {}

  void add(std::string id, std::string anchor, std::string expected, std::string computed) {
    CheckRecord c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.pass = expected == computed;
    c.expected = std::move(expected);
    c.computed = std::move(computed);
    c.elapsed_ms = watch_.ms();
    r_.checks.push_back(std::move(c));
    watch_ = Stopwatch{};
  }

 private:
  VerificationReport& r_;
  Stopwatch watch_;
};

}  // namespace

bool VerificationReport::pass() const {
  for (const CheckRecord& c : checks)
    if (!c.pass) return false;
  return true;
}

json to_json(const VerificationReport& r) {
  json out;
  out["schema"] = 1;
  out["command"] = r.command;
  out["pass"] = r.pass();
  out["elapsed_ms"] = r.elapsed_ms;
  json checks = json::array();
  for (const CheckRecord& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"expected", c.expected},
                      {"computed", c.computed},
                      {"pass", c.pass},
                      {"elapsed_ms", c.elapsed_ms}});
  out["checks"] = checks;
  out["data"] = r.data;
  return out;
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.command << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks.size()
     << " checks, " << r.elapsed_ms << " ms)\n";
  for (const CheckRecord& c : r.checks) {
    os << "  [" << (c.pass ? " ok " : "FAIL") << "] " << std::left << std::setw(28) << c.id
       << " ";
    if (c.pass)
      os << c.computed;
    else
      os << "expected " << c.expected << ", got " << c.computed;
    os << "\n";
  }
  return os.str();
}

VerificationReport verify_example(const k3::SectionInput& in) {
  in.validate();
  VerificationReport r;
  r.command = "verify-example";
  Stopwatch total;
  Recorder rec(r);

  try {
    k3::PipelineSummary s = k3::run_pipeline(in);

    rec.add("section-dim-deg", "k3-section", "(2, 12)", dim_deg(s.section_hilbert));
    rec.add("surface-dim-deg", "nodal-projection", "(2, 9)", dim_deg(s.surface_hilbert));
    rec.add("surface-node-count", "nodal-projection", "3",
            std::to_string(s.surface_nodes.size()));

    int ordinary = 0;
    for (const k3::NodeCertificate& c : s.surface_node_certificates)
      if (c.ordinary_double_point()) ++ordinary;
    rec.add("surface-nodes-ordinary", "nodal-projection", "3 of 3",
            std::to_string(ordinary) + " of " + std::to_string(s.surface_node_certificates.size()));

    std::vector<int> fiber_sizes;
    for (const auto& f : s.node_fibers) fiber_sizes.push_back(static_cast<int>(f.size()));
    rec.add("node-preimages", "nodal-projection", "2,2,2", join_ints(fiber_sizes));

    std::ostringstream census;
    census << "R=" << s.section_points << ", S=" << s.surface_points << ", T="
           << s.inverse_surface_points
           << (s.scissor_count && s.counts_match && s.fiber_accounting ? ", fibers accounted"
                                                                       : ", fiber mismatch");
    rec.add("point-census", "point-census", "R=82, S=100, T=100, fibers accounted",
            census.str());

    std::vector<int> low(s.surface_piece_dims.begin(),
                         s.surface_piece_dims.begin() +
                             std::min<size_t>(3, s.surface_piece_dims.size()));
    rec.add("ideal-low-degrees", "quartic-system", "0,0,0", join_ints(low));
    rec.add("ideal-quartic-dim", "quartic-system", "5",
            s.surface_piece_dims.size() >= 4 ? std::to_string(s.surface_piece_dims[3]) : "absent");
    rec.add("forms-cut-surface", "quartic-system", "saturated ideal equal",
            s.scheme_cut && s.forms_vanish_on_surface ? "saturated ideal equal"
                                                      : "saturated ideal differs");

    auto factor = k3::composition_factor(s.inverse, s.forward);
    rec.add("inverse-composition", "quartic-inverse", "x_i * D(x) for every slot",
            factor && *factor == s.forward_scale ? "x_i * D(x) for every slot"
                                                 : "composition does not factor");
    rec.add("scale-degree", "quartic-inverse", "15", std::to_string(s.forward_scale.degree()));

    Poly det = k3::jacobian_determinant(s.forward);
    rec.add("scale-jacobian", "quartic-inverse", "proportional to det Df",
            !det.is_zero() && det.monic() == s.forward_scale ? "proportional to det Df"
                                                             : "differs from det Df");

    rec.add("base-locus-dim-deg", "base-locus", "(2, 9)", dim_deg(s.inverse_surface_hilbert));

    int t_ordinary = 0;
    for (const k3::NodeCertificate& c : s.inverse_node_certificates)
      if (c.ordinary_double_point()) ++t_ordinary;
    rec.add("base-locus-nodes", "base-locus", "3 ordinary double points",
            std::to_string(s.inverse_nodes.size()) + (t_ordinary == static_cast<int>(s.inverse_nodes.size())
                                                          ? " ordinary double points"
                                                          : " singular points, not all ordinary"));

    json fwd = json::array(), inv = json::array();
    for (const Poly& f : s.forward.forms) fwd.push_back(f.str());
    for (const Poly& g : s.inverse.forms) inv.push_back(g.str());
    json nodes = json::array(), t_nodes = json::array(), centers = json::array();
    for (const auto& a : s.surface_nodes) nodes.push_back(a.str());
    for (const auto& a : s.inverse_nodes) t_nodes.push_back(a.str());
    for (const auto& a : s.center_points) centers.push_back(a.str());
    r.data = {{"prime", in.prime},
              {"section_count", s.section_points},
              {"surface_count", s.surface_points},
              {"base_locus_count", s.inverse_surface_points},
              {"kernel_dimension", s.kernel_dimension},
              {"forward_forms", fwd},
              {"inverse_forms", inv},
              {"forward_scale_degree", s.forward_scale.degree()},
              {"forward_scale_terms", s.forward_scale.size()},
              {"inverse_scale_degree", s.inverse_scale.degree()},
              {"inverse_scale_terms", s.inverse_scale.size()},
              {"surface_nodes", nodes},
              {"base_locus_nodes", t_nodes},
              {"node_fiber_sizes", fiber_sizes},
              {"center_points", centers},
              {"surface_piece_dims", s.surface_piece_dims},
              {"base_locus_piece_dims", s.inverse_piece_dims}};
  } catch (const Error& e) {
    rec.add("pipeline-run", "k3-section", "pipeline completed", e.what());
  }

  r.elapsed_ms = total.ms();
  return r;
}

SurfaceInvariants invariants_from_json(const json& j) {
  if (!j.is_object()) throw Error("intersection input: expected a JSON object");
  auto get = [&](const char* name) -> bigint {
    if (!j.contains(name) || !j[name].is_number_integer())
      throw Error(std::string("intersection input: missing integer field '") + name + "'");
    return bigint(j[name].get<long long>());
  };
  SurfaceInvariants s;
  s.n = get("n");
  s.m = get("m");
  s.d = get("d");
  s.delta = get("delta");
  s.kc = get("kc");
  s.k2 = get("k2");
  s.c2 = get("c2");
  s.chi = get("chi");
  s.g = get("g");
  s.xi = j.contains("xi") ? get("xi") : xi_formula(s);
  return s;
}

VerificationReport intersection(const SurfaceInvariants& s) {
  VerificationReport r;
  r.command = "intersection";
  Stopwatch total;
  Recorder rec(r);

  rec.add("chern-number-consistency", "surface-invariants", bigint(s.k2 + s.c2).str(),
          bigint(12 * s.chi).str());
  rec.add("sectional-genus-consistency", "surface-invariants", bigint(s.d + s.kc).str(),
          bigint(2 * s.g - 2).str());

  TwoWayValue e4 = e4_both(s);
  rec.add("e4-two-routes", "exceptional-divisor", e4.via_chern.str(),
          e4.via_double_point.str());
  TwoWayValue m4 = m4_both(s);
  rec.add("m4-two-routes", "strict-transform", m4.via_chern.str(),
          m4.via_double_point.str());
  rec.add("m4-birational", "strict-transform", "1",
          m4.agree() ? m4.via_chern.str()
                     : m4.via_chern.str() + " / " + m4.via_double_point.str());

  bigint dd = s.d * s.d - (10 * s.d + 5 * s.kc + (s.k2 - s.c2));
  rec.add("double-point-count", "double-point", bigint(2 * s.delta).str(), dd.str());

  json inv = {{"n", json_int(s.n)},   {"m", json_int(s.m)},     {"xi", json_int(s.xi)},
              {"d", json_int(s.d)},   {"delta", json_int(s.delta)}, {"kc", json_int(s.kc)},
              {"k2", json_int(s.k2)}, {"c2", json_int(s.c2)},   {"chi", json_int(s.chi)},
              {"g", json_int(s.g)}};
  r.data["invariants"] = inv;
  json exc = json::array();
  for (const bigint& v : exceptional_numbers()) exc.push_back(json_int(v));
  r.data["exceptional"] = exc;
  r.data["xi_formula"] = json_int(xi_formula(s));
  r.data["double_point_degree"] = json_int(dd);
  try {
    json le = json::array();
    for (const bigint& v : le_numbers(s)) le.push_back(json_int(v));
    r.data["le"] = le;
  } catch (const Error& e) {
    r.data["le_error"] = e.what();
  }
  try {
    json mixed = json::array();
    for (const bigint& v : mixed_numbers(s)) mixed.push_back(json_int(v));
    r.data["mixed"] = mixed;
  } catch (const Error& e) {
    r.data["mixed_error"] = e.what();
  }

  r.elapsed_ms = total.ms();
  return r;
}

namespace {

std::string survivor_list(const std::vector<SurvivorRow>& rows) {
  std::ostringstream os;
  os << "survivors";
  for (size_t i = 0; i < rows.size(); ++i)
    os << (i ? ", " : " ") << "(" << rows[i].d << "," << rows[i].delta << ")";
  return os.str();
}

std::string expected_case_verdict(const std::string& label) {
  if (label == "b") return "survivors (8,7), (9,3)";
  if (label == "b(9,3)") return "survivors (9,3)";
  return "excluded";
}

std::string check_id_for_case(const std::string& label) {
  std::string id = "case-";
  for (char ch : label) {
    if (ch == '(' || ch == ',') id += '-';
    else if (ch == ')') continue;
    else id += ch;
  }
  return id;
}

}  // namespace

VerificationReport classification(bool show_steps, char case_filter) {
  VerificationReport r;
  r.command = "classify";
  Stopwatch total;
  Recorder rec(r);

  ClassificationReport rep;
  try {
    rep = final_classification();
  } catch (const Error& e) {
    rec.add("classification-replay", "case-table", "all certificates replay", e.what());
    r.elapsed_ms = total.ms();
    return r;
  }

  json certs = json::array();
  for (const ExclusionCertificate& cert : rep.certificates) {
    if (case_filter && (cert.case_label.empty() || cert.case_label[0] != case_filter)) continue;

    bool replays = true;
    try {
      cert.verify();
    } catch (const Error&) {
      replays = false;
    }
    std::string computed = cert.excluded ? "excluded" : survivor_list(cert.survivors);
    if (!replays) computed += " (replay failed)";
    rec.add(check_id_for_case(cert.case_label), "case-table",
            expected_case_verdict(cert.case_label), computed);

    json c = {{"label", cert.case_label}, {"excluded", cert.excluded}};
    json rows = json::array();
    for (const SurvivorRow& row : cert.survivors)
      rows.push_back({{"d", json_int(row.d)}, {"delta", json_int(row.delta)}});
    c["survivors"] = rows;
    if (show_steps) {
      json steps = json::array();
      for (const CertStep& st : cert.steps)
        steps.push_back({{"kind", st.kind == StepKind::recomputed ? "recomputed" : "cited"},
                         {"claim", st.claim},
                         {"values", st.values},
                         {"holds", st.holds}});
      c["steps"] = steps;
    }
    certs.push_back(c);
  }
  if (case_filter && certs.empty())
    throw Error(std::string("classify: no case labelled '") + case_filter + "'");
  r.data["certificates"] = certs;

  if (!case_filter) {
    const FinalSurvivor& fs = rep.survivor;
    std::ostringstream got;
    got << "(" << fs.n << ", " << fs.m << ", " << fs.xi << ", " << fs.d << ", " << fs.delta
        << ")";
    rec.add("final-survivor", "classification", "(4, 1, 4, 9, 3)", got.str());
    r.data["survivor"] = {{"n", json_int(fs.n)},
                          {"m", json_int(fs.m)},
                          {"xi", json_int(fs.xi)},
                          {"d", json_int(fs.d)},
                          {"delta", json_int(fs.delta)},
                          {"blowdown_count", json_int(fs.k)},
                          {"minimal_degree", json_int(fs.minimal_degree)},
                          {"minimal_k2", json_int(fs.minimal_k2)},
                          {"minimal_c2", json_int(fs.minimal_c2)},
                          {"minimal_chi", json_int(fs.minimal_chi)}};
  }

  r.elapsed_ms = total.ms();
  return r;
}

VerificationReport lattice() {
  VerificationReport r;
  r.command = "lattice";
  Stopwatch total;
  Recorder rec(r);

  GramLattice G = algebraic_gram();
  DiscriminantGroup disc = discriminant_group(G);
  std::string group = "trivial";
  if (!disc.invariant_factors.empty()) {
    std::ostringstream os;
    for (size_t i = 0; i < disc.invariant_factors.size(); ++i)
      os << (i ? " x " : "") << "Z/" << disc.invariant_factors[i];
    group = os.str();
  }
  rec.add("discriminant-group", "middle-cohomology", "Z/12", group);

  std::ostringstream gen;
  gen << "(";
  for (size_t i = 0; i < disc.generator_expr.size(); ++i)
    gen << (i ? ", " : "") << disc.generator_expr[i].str();
  gen << ")";
  rec.add("discriminant-generator", "middle-cohomology", "(0, -1/12, 0, 0, 0, 0, 0, 0)",
          gen.str());

  auto mixed = mixed_numbers(survivor_surface());
  ClassVector m2;
  bool have_m2 = false;
  try {
    DecompositionSolution sol = solve_class_decomposition(
        m_square_problem(mixed[1], mixed[2], mixed[3]));
    m2 = sol.vec;
    have_m2 = true;
    rec.add("plane-square-class", "base-change", "(7, -3, 4, 4, 4, 2, 2, 2)", sol.vec.str());
    r.data["m_square"] = {{"class", sol.vec.str()},
                          {"window", {json_int(sol.window_lo), json_int(sol.window_hi)}},
                          {"candidates", sol.candidates.size()}};
  } catch (const Error& e) {
    rec.add("plane-square-class", "base-change", "(7, -3, 4, 4, 4, 2, 2, 2)", e.what());
  }
  if (have_m2) {
    try {
      DecompositionSolution sol = solve_class_decomposition(h_m_problem(m2));
      rec.add("polarization-class", "base-change", "(36, -17, 24, 24, 24, 12, 12, 12)",
              sol.vec.str());
      r.data["polarization"] = {{"class", sol.vec.str()},
                                {"window", {json_int(sol.window_lo), json_int(sol.window_hi)}},
                                {"candidates", sol.candidates.size()}};
    } catch (const Error& e) {
      rec.add("polarization-class", "base-change", "(36, -17, 24, 24, 24, 12, 12, 12)",
              e.what());
    }
  } else {
    rec.add("polarization-class", "base-change", "(36, -17, 24, 24, 24, 12, 12, 12)",
            "not attempted");
  }

  IntMatrix T = full_base_change();
  bool isometry = true;
  const size_t n = T.size();
  for (size_t i = 0; i < n && isometry; ++i)
    for (size_t j = 0; j < n && isometry; ++j) {
      bigint acc = 0;
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) acc += T[i][a] * G.gram[a][b] * T[j][b];
      if (acc != G.gram[i][j]) isometry = false;
    }
  rec.add("base-change-isometry", "base-change", "T*G*T^t = G",
          isometry ? "T*G*T^t = G" : "not an isometry");

  bigint kappa = discriminant_action(T);
  rec.add("discriminant-multiplier", "base-change", "7", kappa.str());
  rec.add("multiplier-involution", "base-change", "1", bigint((kappa * kappa) % 12).str());

  bool involution = true;
  for (size_t i = 0; i < n && involution; ++i)
    for (size_t j = 0; j < n && involution; ++j) {
      bigint acc = 0;
      for (size_t a = 0; a < n; ++a) acc += T[i][a] * T[a][j];
      if (acc != bigint(i == j ? 1 : 0)) involution = false;
    }
  r.data["gram"] = json_matrix(G.gram);
  r.data["base_change"] = json_matrix(T);
  r.data["base_change_involution"] = involution;
  json factors = json::array();
  for (const bigint& f : disc.invariant_factors) factors.push_back(json_int(f));
  r.data["invariant_factors"] = factors;
  r.data["generator"] = gen.str();

  r.elapsed_ms = total.ms();
  return r;
}

VerificationReport motivic(const std::optional<k3::SectionInput>& points) {
  VerificationReport r;
  r.command = "motivic";
  Stopwatch total;
  Recorder rec(r);

  cremona::motivic::MotivicExpression diff;
  bool have_identity = false;
  try {
    diff = cremona::motivic::annihilation_identity();
    have_identity = true;
    rec.add("annihilation-identity", "grothendieck-ring", "KF*L - KG*L", diff.str());
    rec.add("identified-collapse", "grothendieck-ring", "0", diff.identify_sides().str());
    r.data["fourfold_forward"] =
        cremona::motivic::blowup_fourfold_class(cremona::motivic::Side::forward).str();
    r.data["fourfold_inverse"] =
        cremona::motivic::blowup_fourfold_class(cremona::motivic::Side::inverse).str();
  } catch (const std::runtime_error& e) {
    rec.add("annihilation-identity", "grothendieck-ring", "KF*L - KG*L", e.what());
  }

  r.data["identity"] = have_identity ? diff.str() : "unavailable";

  if (points) {
    k3::PipelineSummary s = k3::run_pipeline(*points);
    const bigint q = points->prime;
    const bigint r_l = s.section_points;
    const bigint s_count = s.surface_points;
    const bigint t_count = s.inverse_surface_points;
    const bigint r_m = t_count - (3 * q - 3);

    rec.add("l-side-census", "point-census", bigint(r_l + 3 * q - 3).str(), s_count.str());
    rec.add("k3-counts-equal", "point-census", r_l.str(), r_m.str());

    bigint lhs = cremona::motivic::blowup_fourfold_class(cremona::motivic::Side::forward)
                     .evaluate(q, r_l, r_m);
    bigint rhs = cremona::motivic::blowup_fourfold_class(cremona::motivic::Side::inverse)
                     .evaluate(q, r_l, r_m);
    rec.add("fourfold-counts", "point-census", lhs.str(), rhs.str());

    r.data["counts"] = {{"q", json_int(q)},
                        {"section", json_int(r_l)},
                        {"surface", json_int(s_count)},
                        {"base_locus", json_int(t_count)},
                        {"reconstructed_section", json_int(r_m)},
                        {"fourfold", json_int(lhs)}};
  }

  r.elapsed_ms = total.ms();
  return r;
}

}  // namespace cremona::report
