#include "qkit/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qkit/channels.hpp"
#include "qkit/cv_joint.hpp"
#include "qkit/random.hpp"
#include "qkit/tensor.hpp"

namespace qkit {

namespace {

class Checks {
 public:
  explicit Checks(Report& r) : report_(r) {}

  void close(const std::string& name, double expected, double actual, double tol) {
    add(name, expected, actual, tol, std::abs(actual - expected) <= tol);
  }
  void residual(const std::string& name, double actual, double tol) { close(name, 0.0, actual, tol); }
  void at_least(const std::string& name, double bound, double actual, double tol) {
    add(name, bound, actual, tol, actual >= bound - tol);
  }
  void at_most(const std::string& name, double bound, double actual, double tol) {
    add(name, bound, actual, tol, actual <= bound + tol);
  }
  void flag(const std::string& name, bool expected, bool actual) { add(name, expected, actual, 0.0, expected == actual); }

 private:
  void add(const std::string& name, Json expected, Json actual, double tol, bool pass) {
    report_.checks.push_back({name, std::move(expected), std::move(actual), tol, pass});
  }
  Report& report_;
};

double max_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

Json spectrum_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

MatrixDoc load_doc(const std::string& path) { return parse_doc(read_json(path)); }

DensityOperator load_state(const ScenarioOptions& opts, Rng& rng, const std::function<DensityOperator()>& fallback) {
  if (!opts.state) return fallback();
  if (*opts.state == "random") return DensityOperator::from(random_density_matrix(rng, opts.dim));
  return doc_to_state(load_doc(*opts.state), opts.tolerances());
}

KrausChannel load_channel(const ScenarioOptions& opts, Rng& rng) {
  if (opts.channel) return doc_to_channel(load_doc(*opts.channel), opts.tolerances());
  return make_channel(random_kraus_set(rng, opts.dim, opts.dim * opts.dim));
}

Instrument load_instrument(const ScenarioOptions& opts) {
  if (opts.instrument) return doc_to_instrument(load_doc(*opts.instrument), opts.tolerances());
  return povm_to_detection(trine_povm());
}

CMatrix bell_projector() {
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = M_SQRT1_2;
  return projector(phi);
}

double completeness_residual(const std::vector<CMatrix>& ops, bool sandwich) {
  const auto d = ops.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& m : ops) sum += sandwich ? CMatrix(m.adjoint() * m) : m;
  return max_diff(sum, CMatrix::Identity(d, d));
}

void report_state(Json& out, const DensityOperator& rho, LogBase base) {
  const auto pe = purity_and_entropy(rho, base);
  out["purity"] = pe.purity;
  out["entropy"] = pe.entropy;
}

Report validate(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "validate";
  Checks c(r);
  const Tolerances tol = opts.tolerances();
  Rng rng(opts.seed);
  bool any = false;

  if (opts.state) {
    any = true;
    CMatrix m;
    std::optional<SystemDims> dims;
    if (*opts.state == "random") {
      m = random_density_matrix(rng, opts.dim);
    } else {
      const auto doc = load_doc(*opts.state);
      if (doc.kind == DocKind::State) {
        m = projector(doc.matrices.at(0).col(0));
      } else if (doc.kind == DocKind::Density) {
        m = doc.matrices.at(0);
      } else {
        throw SchemaError("/kind", "expected a state or density document");
      }
      dims = doc.dims;
    }
    const CMatrix h = (m + m.adjoint()) / 2.0;
    c.residual("hermiticity", hermiticity_violation(m), tol.hermiticity * Tolerances::scale(m));
    c.at_least("min_eigenvalue", 0.0, hermitian_eig(h).min(), tol.positivity * Tolerances::scale(m));
    c.close("trace", 1.0, trace(m).real(), 1e-9);
    auto v = assert_density(m, dims, tol);
    if (v) report_state(r.outputs["state"], v.value(), opts.log_base);
  }
  if (opts.instrument) {
    any = true;
    const auto doc = load_doc(*opts.instrument);
    if (doc.kind == DocKind::Povm) {
      double min_eig = 0.0;
      for (const auto& e : doc.matrices) min_eig = std::min(min_eig, hermitian_eig((e + e.adjoint()) / 2.0).min());
      c.at_least("povm_min_eigenvalue", 0.0, min_eig, tol.positivity);
      c.residual("completeness", completeness_residual(doc.matrices, false), kCompletenessTolerance);
    } else if (doc.kind == DocKind::Instrument) {
      c.residual("completeness", completeness_residual(doc.matrices, true), kCompletenessTolerance);
    } else {
      throw SchemaError("/kind", "expected a povm or instrument document");
    }
    r.outputs["outcomes"] = doc.matrices.size();
  }
  if (opts.channel) {
    any = true;
    const auto doc = load_doc(*opts.channel);
    if (doc.kind == DocKind::Kraus) {
      const auto d = doc.matrices.front().rows();
      CMatrix sum = CMatrix::Zero(d, d);
      for (const auto& m : doc.matrices) sum += m.adjoint() * m;
      const double excess = hermitian_eig(sum - CMatrix::Identity(d, d)).max();
      c.at_most("completeness_excess", 0.0, excess, kCompletenessTolerance);
      r.outputs["trace_preserving"] = completeness_residual(doc.matrices, true) <= kCompletenessTolerance;
    } else if (doc.kind == DocKind::Superop) {
      const auto verdict = is_completely_positive(LinearMap::from_superoperator(doc.matrices.at(0)), tol);
      c.at_least("choi_min_eigenvalue", 0.0, verdict.min_eigenvalue, tol.positivity);
    } else {
      throw SchemaError("/kind", "expected a kraus or superop document");
    }
  }
  if (!any) {
    const CMatrix m = random_density_matrix(rng, opts.dim);
    c.residual("hermiticity", hermiticity_violation(m), tol.hermiticity);
    c.at_least("min_eigenvalue", 0.0, hermitian_eig(m).min(), tol.positivity);
    c.close("trace", 1.0, trace(m).real(), 1e-9);
    report_state(r.outputs["state"], DensityOperator::from(m), opts.log_base);
  }
  return r;
}

Report reduce_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "reduce";
  Checks c(r);
  Rng rng(opts.seed);
  bool pure_input = !opts.state;
  const auto rho = load_state(opts, rng, [&] { return DensityOperator::pure(random_pure_state(rng, 4), SystemDims{2, 2}); });
  if (rho.dims().factors() < 2) throw Error(ErrorKind::Precondition, "reduce needs a state with at least two factors");
  const auto red = reduce(rho, std::span<const std::size_t>(opts.keep));
  const auto pe = purity_and_entropy(red, opts.log_base);
  const double dk = static_cast<double>(red.dim());
  c.close("trace", 1.0, trace(red.matrix()).real(), 1e-12);
  c.at_least("purity_lower", 1.0 / dk, pe.purity, 1e-12);
  c.at_most("purity_upper", 1.0, pe.purity, 1e-12);
  const double max_entropy = opts.log_base == LogBase::Two ? std::log2(dk) : std::log(dk);
  c.at_most("entropy_upper", max_entropy, pe.entropy, 1e-12);
  if (!pure_input) pure_input = purity_and_entropy(rho).purity > 1.0 - 1e-12;
  if (pure_input && rho.dims().factors() == 2 && opts.keep.size() == 1) {
    const std::size_t other = 1 - opts.keep.front();
    const auto complement = reduce(rho, {other});
    c.close("complementary_entropy", pe.entropy, purity_and_entropy(complement, opts.log_base).entropy, 1e-9);
  }
  r.outputs["reduced"] = emit_doc(state_doc(red));
  r.outputs["purity"] = pe.purity;
  r.outputs["entropy"] = pe.entropy;
  return r;
}

Report purify_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "purify";
  Checks c(r);
  Rng rng(opts.seed);
  const auto rho = load_state(opts, rng, [&] { return DensityOperator::from(random_density_matrix(rng, opts.dim)); });
  const auto pur = purify(rho);
  c.close("norm", 1.0, pur.vector.norm(), 1e-12);
  const auto back = partial_trace(projector(pur.vector), pur.dims, {0});
  c.residual("reduce_purify", max_diff(back, rho.matrix()), 1e-10);
  c.at_most("ancilla_dim", static_cast<double>(rho.dim()), static_cast<double>(pur.dims[1]), 0.0);
  r.outputs["purification"] = emit_doc({DocKind::State, pur.dims, {}, {CMatrix(pur.vector)}});
  report_state(r.outputs, rho, opts.log_base);
  return r;
}

Report naimark_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "naimark";
  Checks c(r);
  Rng rng(opts.seed);
  const Tolerances tol = opts.tolerances();
  const auto inst = load_instrument(opts);
  const auto povm = detection_to_povm(inst);
  const auto ext = canonical_naimark(inst, std::nullopt, tol);
  c.residual("unitarity", unitarity_violation(ext.unitary), 1e-9);
  const auto rec = recovered_povm(ext);
  double recovery = 0.0;
  for (std::size_t x = 0; x < povm.size(); ++x) recovery = std::max(recovery, max_diff(rec.elements[x], povm.elements[x]));
  c.residual("recovery_residual", recovery, 1e-8);

  const auto rho = load_state(opts, rng, [&] { return DensityOperator::from(random_density_matrix(rng, inst.dim())); });
  const auto direct = measure(rho, inst);
  const auto via = extension_statistics(ext, rho);
  double prob_residual = 0.0, state_residual = 0.0;
  for (std::size_t x = 0; x < inst.size(); ++x) {
    prob_residual = std::max(prob_residual, std::abs(direct.probabilities[x] - via.probabilities[x]));
  }
  for (const auto& rec_x : direct.records) {
    const auto& cs = via.conditional_states[rec_x.outcome];
    if (!cs) {
      state_residual = std::max(state_residual, 1.0);
      continue;
    }
    state_residual = std::max(state_residual, max_diff(cs->matrix(), rec_x.state.matrix()));
  }
  c.residual("probability_residual", prob_residual, 1e-8);
  c.residual("conditional_state_residual", state_residual, 1e-8);
  r.outputs["ancilla_dim"] = ext.ancilla_dim;
  r.outputs["labels"] = ext.labels;
  r.outputs["probabilities"] = direct.probabilities;
  return r;
}

Report roulette_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "roulette";
  Checks c(r);
  Rng rng(opts.seed);
  const std::vector<CMatrix> bases = {sigma_z_basis(), sigma_x_basis()};
  const std::vector<double> weights = {0.5, 0.5};
  const auto rl = quantum_roulette(bases, weights, {}, opts.tolerances());
  c.residual("probe_projector_defect", rl.probe.projector_defect, 1e-10);

  const auto rho = load_state(opts, rng, [&] { return DensityOperator::from(random_density_matrix(rng, 2)); });
  const auto probe = roulette_probe_statistics(rl, rho);
  const auto mixed = born_rule(rho, rl.povm);
  double stat_residual = 0.0, post_residual = 0.0;
  for (std::size_t x = 0; x < probe.size(); ++x) {
    stat_residual = std::max(stat_residual, std::abs(probe[x] - mixed[x]));
    const auto a = roulette_probe_post_state(rl, rho, x);
    const auto b = roulette_mixed_post_state(rl, rho, x);
    if (a.state && b.state) post_residual = std::max(post_residual, max_diff(a.state->matrix(), b.state->matrix()));
  }
  c.residual("probe_vs_mixed_statistics", stat_residual, 1e-10);
  c.residual("probe_vs_mixed_post_state", post_residual, 1e-10);
  double nonprojective = 0.0;
  for (const auto& e : rl.povm.elements) nonprojective = std::max(nonprojective, max_diff(e * e, e));
  c.at_least("non_projectivity", 1e-6, nonprojective, 0.0);
  r.outputs["povm"] = emit_doc(povm_doc(rl.povm));
  r.outputs["probabilities"] = probe;
  return r;
}

Report heisenberg_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "heisenberg";
  Checks c(r);
  Rng rng(opts.seed);
  const auto rho = load_state(opts, rng, [&] { return DensityOperator::from(random_density_matrix(rng, 2)); });
  const CMatrix basis_a = sigma_z_basis();
  const CMatrix basis_b = sigma_x_basis();
  const auto inst = heisenberg_instrument(basis_a, basis_b, 0, opts.tolerances());
  const auto res = measure(rho, inst);
  const CMatrix target = projector(basis_b.col(0));
  double stat_residual = 0.0, post_residual = 0.0;
  for (std::size_t a = 0; a < inst.size(); ++a) {
    const double projective = basis_a.col(static_cast<Eigen::Index>(a)).dot(rho.matrix() * basis_a.col(static_cast<Eigen::Index>(a))).real();
    stat_residual = std::max(stat_residual, std::abs(res.probabilities[a] - projective));
  }
  for (const auto& rec : res.records) post_residual = std::max(post_residual, max_diff(rec.state.matrix(), target));
  c.residual("projective_statistics", stat_residual, 1e-12);
  c.residual("post_state_is_b", post_residual, 1e-12);

  const std::size_t d = std::max<std::size_t>(opts.dim, 2);
  const auto sigma = DensityOperator::from(random_density_matrix(rng, d));
  const auto photo = measure(sigma, photodetector_instrument(d));
  double photo_residual = 0.0, vacuum_residual = 0.0;
  for (std::size_t n = 0; n < d; ++n) {
    const auto nn = static_cast<Eigen::Index>(n);
    photo_residual = std::max(photo_residual, std::abs(photo.probabilities[n] - sigma.matrix()(nn, nn).real()));
  }
  const CMatrix vacuum = projector(basis_vector(d, 0));
  for (const auto& rec : photo.records) vacuum_residual = std::max(vacuum_residual, max_diff(rec.state.matrix(), vacuum));
  c.residual("photodetector_statistics", photo_residual, 1e-15);
  c.residual("photodetector_post_state_vacuum", vacuum_residual, 1e-15);
  r.outputs["probabilities"] = res.probabilities;
  r.outputs["photodetector_probabilities"] = photo.probabilities;
  return r;
}

Report choi_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "choi";
  Checks c(r);
  Rng rng(opts.seed);
  const Tolerances tol = opts.tolerances();
  const auto ch = load_channel(opts, rng);
  const std::size_t d = ch.dim();
  const auto cm = choi(ch);
  const auto verdict = is_completely_positive(as_linear_map(ch), tol);
  c.flag("completely_positive", true, verdict.completely_positive);
  const auto extracted = kraus_from_choi(cm, tol);
  c.at_most("kraus_count", static_cast<double>(d * d), static_cast<double>(extracted.size()), 0.0);
  c.residual("choi_kraus_distance", choi_distance(ch, extracted), 1e-9);
  const CVector psi = random_pure_state(rng, d);
  c.residual("action_from_choi", max_diff(action_from_choi(cm, psi), act(ch, projector(psi))), 1e-9);

  const auto transposition = is_completely_positive(transposition_map(2), tol);
  c.flag("transposition_completely_positive", false, transposition.completely_positive);
  c.close("transposition_witness_eigenvalue", -0.5, transposition.min_eigenvalue, 1e-10);
  r.outputs["choi_eigenvalues"] = spectrum_json(hermitian_eig(cm.mat).eigenvalues);
  r.outputs["kraus_count"] = extracted.size();
  r.outputs["kraus"] = emit_doc(channel_doc(extracted));
  return r;
}

Report dilate_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "dilate";
  Checks c(r);
  Rng rng(opts.seed);
  const auto ch = load_channel(opts, rng);
  const auto dil = stinespring(ch, opts.tolerances());
  c.residual("unitarity", unitarity_violation(dil.unitary), 1e-9);
  const CMatrix rho = random_density_matrix(rng, ch.dim());
  c.residual("two_path_agreement", max_diff(dilation_action(dil, rho), act(ch, rho)), 1e-9);
  r.outputs["ancilla_dim"] = dil.ancilla_dim;
  r.outputs["unitary"] = emit_doc({DocKind::Unitary, SystemDims{dil.system_dim, dil.ancilla_dim}, {}, {dil.unitary}});
  return r;
}

Report depolarize_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "depolarize";
  Checks c(r);
  Rng rng(opts.seed);
  const auto rho = load_state(opts, rng, [&] { return DensityOperator::from(random_density_matrix(rng, 2)); });
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "depolarize acts on qubits");
  const auto ch = depolarizing(opts.gamma);
  const double p = depolarizing_p(opts.gamma);
  const auto out = apply(ch, rho);
  const CMatrix half_identity = CMatrix::Identity(2, 2) / 2.0;
  const CMatrix expected = p * rho.matrix() + (1.0 - p) * half_identity;
  c.residual("shrink_identity", max_diff(out.state->matrix(), expected), 1e-12);
  const double purity_in = purity_and_entropy(rho).purity;
  const double purity_out = purity_and_entropy(*out.state).purity;
  c.at_most("purity_non_increasing", purity_in, purity_out, 1e-12);
  if (std::abs(opts.gamma - 0.75) < 1e-15) c.residual("output_is_maximally_mixed", max_diff(out.state->matrix(), half_identity), 1e-12);
  if (opts.channel) {
    const auto fixture = doc_to_channel(load_doc(*opts.channel), opts.tolerances());
    c.residual("fixture_matches_gamma", choi_distance(fixture, ch), kSameChannelTolerance);
  }
  r.outputs["p"] = p;
  r.outputs["output"] = emit_doc(state_doc(*out.state));
  r.outputs["purity_in"] = purity_in;
  r.outputs["purity_out"] = purity_out;
  return r;
}

Report ppt_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "ppt";
  Checks c(r);
  Rng rng(opts.seed);
  const auto rho = load_state(opts, rng, [] { return DensityOperator::from(bell_projector(), SystemDims{2, 2}); });
  if (rho.dims().factors() != 2) throw Error(ErrorKind::Precondition, "ppt needs a bipartite state with dims [dA, dB]");
  const auto res = ppt_check(rho, std::nullopt, opts.tolerances());
  const CMatrix pt = partial_transpose(rho.matrix(), rho.dims(), 1);
  c.close("partial_transpose_trace", 1.0, trace(pt).real(), 1e-12);
  c.residual("involution", max_diff(partial_transpose(pt, rho.dims(), 1), rho.matrix()), 0.0);
  c.close("eigenvalue_sum", 1.0, res.eigenvalues.sum(), 1e-10);
  r.outputs["eigenvalues"] = spectrum_json(res.eigenvalues);
  r.outputs["min_eig"] = res.min_eigenvalue;
  r.outputs["npt"] = res.negative;
  return r;
}

Report joint_demo(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "joint-demo";
  Checks c(r);
  const auto space = build_fock(opts.cutoff);
  const auto pair = joint_pair(space);
  c.residual("commutator_below_cutoff", pair.commutator_residual, 1e-12);
  const auto vacuum = DensityOperator::pure(space.number_state(0));
  const std::vector<std::pair<std::string, Complex>> alphas = {{"0", {0, 0}}, {"1", {1, 0}}, {"1+i", {1, 1}}};
  Json runs = Json::array();
  for (const auto& [tag, alpha] : alphas) {
    const CVector psi = coherent_state(alpha, space);
    const auto rho_a = DensityOperator::pure(psi);
    const auto rep = joint_statistics(pair, rho_a, vacuum);
    const std::string pre = "alpha=" + tag + ":";
    c.close(pre + "varX", 1.0, rep.var_x, 1e-6);
    c.close(pre + "varY", 1.0, rep.var_y, 1e-6);
    c.close(pre + "product", 1.0, rep.product, 2e-6);
    c.close(pre + "product_vs_commutator_sq", rep.commutator_sq, rep.product, 2e-6);
    c.close(pre + "varX_replica_identity", rep.var_x_rhs, rep.var_x, 1e-9);
    c.close(pre + "varY_replica_identity", rep.var_y_rhs, rep.var_y, 1e-9);
    c.close(pre + "four_term_expansion", rep.product_expansion, rep.product, 1e-9);
    c.at_least(pre + "chain_bound", rep.chain_bound, rep.product, 1e-9);
    c.close(pre + "ratio_to_single_bound", 4.0, rep.product / rep.single_bound, 8e-6);
    const auto ur = uncertainty_check(rho_a, space.q(), space.p());
    c.flag(pre + "uncertainty_relation", true, ur.strong_holds);
    c.residual(pre + "minimum_uncertainty_residual", mus_residual(psi, space.q(), space.p(), 1.0), 1e-6);
    Json run;
    run["alpha"] = tag;
    run["varX"] = rep.var_x;
    run["varY"] = rep.var_y;
    run["product"] = rep.product;
    run["bound"] = rep.single_bound;
    run["added_noise_terms"] = Json::array({rep.added_noise[0], rep.added_noise[1], rep.added_noise[2]});
    runs.push_back(std::move(run));
  }
  r.outputs["cutoff"] = opts.cutoff;
  r.outputs["runs"] = std::move(runs);
  return r;
}

Report sample_scenario(const ScenarioOptions& opts) {
  Report r;
  r.scenario = "sample";
  Checks c(r);
  Rng rng(opts.seed);
  const auto inst = load_instrument(opts);
  const auto rho = load_state(opts, rng, [&] { return DensityOperator::pure(basis_vector(inst.dim(), 0)); });
  const auto res = sample_outcomes(rho, inst, opts.shots, opts.seed);
  std::uint64_t total = 0;
  for (auto n : res.counts) total += n;
  c.close("shot_total", static_cast<double>(opts.shots), static_cast<double>(total), 0.0);
  c.at_most("max_sigma", 5.0, res.max_sigma, 0.0);
  r.outputs["shots"] = opts.shots;
  r.outputs["seed"] = opts.seed;
  r.outputs["counts"] = res.counts;
  r.outputs["frequencies"] = res.frequencies;
  r.outputs["probabilities"] = res.probabilities;
  return r;
}

using Runner = Report (*)(const ScenarioOptions&);

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> table = {
      {"validate", validate},          {"reduce", reduce_scenario},   {"purify", purify_scenario},
      {"naimark", naimark_scenario},   {"roulette", roulette_scenario}, {"heisenberg", heisenberg_scenario},
      {"choi", choi_scenario},         {"dilate", dilate_scenario},   {"depolarize", depolarize_scenario},
      {"ppt", ppt_scenario},           {"joint-demo", joint_demo},    {"sample", sample_scenario},
  };
  return table;
}

}  // namespace

Tolerances ScenarioOptions::tolerances() const {
  Tolerances t;
  if (tol) t.hermiticity = t.orthonormality = t.positivity = *tol;
  return t;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Json Report::to_json() const {
  Json j;
  j["scenario"] = scenario;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["expected"] = c.expected;
    e["actual"] = c.actual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["pass"] = pass();
  j["outputs"] = outputs;
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "  ok    " : "  FAIL  ") << c.name << "  actual=" << c.actual.dump() << " expected=" << c.expected.dump()
       << " tol=" << c.tolerance << "\n";
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
  os << scenario << ": " << (checks.size() - static_cast<std::size_t>(failed)) << "/" << checks.size() << " checks passed\n";
  return os.str();
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"validate", "reduce",     "purify", "naimark",    "roulette", "heisenberg",
                                                 "choi",     "dilate",     "depolarize", "ppt", "joint-demo", "sample"};
  return names;
}

bool is_scenario(const std::string& name) { return registry().count(name) > 0; }

Report run_scenario(const std::string& name, const ScenarioOptions& opts) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::InvalidArgument, "unknown scenario '" + name + "'");
  return it->second(opts);
}

}  // namespace qkit
