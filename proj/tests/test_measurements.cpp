#include <doctest.h>

#include <cmath>

#include "qkit/measurements.hpp"
#include "qkit/random.hpp"
#include "qkit/tensor.hpp"
#include "support.hpp"

using namespace qkit;

namespace {

Instrument random_instrument(Rng& rng, std::size_t d, std::size_t n) {
  return assert_instrument(random_kraus_set(rng, d, n)).value();
}

Instrument sigma_z_instrument() {
  return assert_instrument({projector(basis_vector(2, 0)), projector(basis_vector(2, 1))}).value();
}

CVector plus() { return CVector(sigma_x_basis().col(0)); }

}  // namespace

TEST_CASE("assert_povm") {
  CHECK(assert_povm({projector(basis_vector(2, 0)), projector(basis_vector(2, 1))}).ok());
  const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
  CHECK(assert_povm({half, half}).ok());
  const auto bad = assert_povm({half, half / 2.0});
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.diagnostic().magnitude("completeness").value() == doctest::Approx(0.25));

  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  const auto v = assert_povm({neg, CMatrix::Identity(2, 2) - neg});
  REQUIRE_FALSE(v.ok());
  CHECK(v.diagnostic().magnitude("positivity").value() == doctest::Approx(0.5));
  CHECK(assert_povm({half, half}).value().labels == std::vector<std::string>{"0", "1"});
}

TEST_CASE("detection_to_povm") {
  const auto p = detection_to_povm(sigma_z_instrument());
  CHECK(oracle::max_abs(p.elements[0] - projector(basis_vector(2, 0))) == 0.0);

  const auto photo = detection_to_povm(photodetector_instrument(4));
  for (std::size_t n = 0; n < 4; ++n) CHECK(oracle::max_abs(photo.elements[n] - projector(basis_vector(4, n))) == 0.0);

  Rng rng(31);
  const auto inst = random_instrument(rng, 2, 3);
  const auto povm = detection_to_povm(inst);
  CMatrix sum = CMatrix::Zero(2, 2);
  for (const auto& m : inst.detection_ops) sum += m.adjoint() * m;
  CHECK(oracle::max_abs(sum - CMatrix::Identity(2, 2)) <= 1e-10);
  CHECK(assert_povm(povm.elements).ok());
}

TEST_CASE("povm_to_detection") {
  const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
  const auto inst = povm_to_detection(assert_povm({half, half}).value());
  CHECK(oracle::max_abs(inst.detection_ops[0] - CMatrix::Identity(2, 2) * M_SQRT1_2) <= 1e-15);

  const auto proj = povm_to_detection(detection_to_povm(sigma_z_instrument()));
  CHECK(oracle::max_abs(proj.detection_ops[1] - projector(basis_vector(2, 1))) <= 1e-15);

  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto povm = detection_to_povm(random_instrument(rng, 3, 4));
    const auto back = detection_to_povm(povm_to_detection(povm));
    for (std::size_t x = 0; x < povm.size(); ++x) CHECK(oracle::max_abs(back.elements[x] - povm.elements[x]) <= 1e-9);
  }

  const auto povm = detection_to_povm(random_instrument(rng, 2, 2));
  CMatrix not_unitary = CMatrix::Identity(2, 2);
  not_unitary(0, 1) = 0.5;
  CHECK_THROWS_AS(povm_to_detection(povm, {not_unitary, CMatrix::Identity(2, 2)}), Error);
}

TEST_CASE("unitary freedom in the detection operators") {
  Rng rng(33);
  const auto povm = detection_to_povm(random_instrument(rng, 3, 3));
  const std::vector<CMatrix> us = {random_unitary(rng, 3), random_unitary(rng, 3), random_unitary(rng, 3)};
  const auto plain = povm_to_detection(povm);
  const auto rotated = povm_to_detection(povm, us);
  const auto rotated_povm = detection_to_povm(rotated);
  const auto rho = DensityOperator::from(random_density_matrix(rng, 3));
  const auto a = measure(rho, plain), b = measure(rho, rotated);
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(oracle::max_abs(rotated_povm.elements[x] - povm.elements[x]) <= 1e-12);
    CHECK(std::abs(a.probabilities[x] - b.probabilities[x]) <= 1e-12);
    const CMatrix expected = us[x] * a.records[x].state.matrix() * us[x].adjoint();
    CHECK(oracle::max_abs(b.records[x].state.matrix() - expected) <= 1e-12);
  }
}

TEST_CASE("born_rule") {
  Rng rng(34);
  const auto povm = detection_to_povm(random_instrument(rng, 2, 4));
  const auto p = born_rule(DensityOperator::maximally_mixed(2), povm);
  for (std::size_t x = 0; x < 4; ++x) CHECK(p[x] == doctest::Approx(oracle::trace(povm.elements[x]).real() / 2.0));

  const POVM sx{{"+", "-"}, {projector(sigma_x_basis().col(0)), projector(sigma_x_basis().col(1))}};
  const auto q = born_rule(DensityOperator::pure(basis_vector(2, 0)), sx);
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.5));

  for (int trial = 0; trial < 20; ++trial) {
    Ensemble e;
    for (int k = 0; k < 3; ++k) e.push_back({1.0 / 3.0, random_pure_state(rng, 3)});
    const auto rho = density_from_ensemble(e);
    const auto pv = detection_to_povm(random_instrument(rng, 3, 5));
    const auto probs = born_rule(rho, pv);
    double total = 0.0;
    for (std::size_t x = 0; x < pv.size(); ++x) {
      double expected = 0.0;
      for (const auto& m : e) expected += m.probability * m.state.dot(pv.elements[x] * m.state).real();
      CHECK(std::abs(probs[x] - expected) <= 1e-10);
      total += probs[x];
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
  CHECK_THROWS_AS(born_rule(DensityOperator::maximally_mixed(3), sx), Error);
}

TEST_CASE("measure and nonselective") {
  const auto rho = DensityOperator::pure(plus());
  const auto res = measure(rho, sigma_z_instrument());
  REQUIRE(res.records.size() == 2);
  CHECK(res.records[0].probability == doctest::Approx(0.5));
  CHECK(oracle::max_abs(res.records[1].state.matrix() - projector(basis_vector(2, 1))) <= 1e-15);
  CHECK(oracle::max_abs(nonselective(rho, sigma_z_instrument()).matrix() - CMatrix::Identity(2, 2) / 2.0) <= 1e-15);

  const auto one = DensityOperator::pure(basis_vector(3, 1));
  const auto photo = measure(one, photodetector_instrument(3));
  REQUIRE(photo.records.size() == 1);
  CHECK(photo.records[0].outcome == 1);
  CHECK(photo.records[0].probability == 1.0);
  CHECK(oracle::max_abs(photo.records[0].state.matrix() - projector(basis_vector(3, 0))) == 0.0);
  CHECK(photo.zero_probability == std::vector<std::size_t>{0, 2});

  Rng rng(35);
  const auto mixed = DensityOperator::from(random_density_matrix(rng, 4));
  CHECK(oracle::max_abs(nonselective(mixed, photodetector_instrument(4)).matrix() - projector(basis_vector(4, 0))) <= 1e-15);
  const auto trivial = assert_instrument({CMatrix::Identity(4, 4)}).value();
  CHECK(oracle::max_abs(nonselective(mixed, trivial).matrix() - mixed.matrix()) == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instrument(rng, 3, 4);
    const auto r = DensityOperator::from(random_density_matrix(rng, 3));
    const auto m = measure(r, inst);
    const auto b = born_rule(r, detection_to_povm(inst));
    for (std::size_t x = 0; x < 4; ++x) CHECK(std::abs(m.probabilities[x] - b[x]) <= 1e-10);
  }
}

TEST_CASE("canonical Naimark extension") {
  const auto ext = canonical_naimark(sigma_z_instrument());
  CHECK(ext.ancilla_dim == 2);
  CHECK(ext.unitary.rows() == 4);
  CHECK(unitarity_violation(ext.unitary) <= 1e-12);
  const auto rec = recovered_povm(ext);
  CHECK(oracle::max_abs(rec.elements[0] - projector(basis_vector(2, 0))) <= 1e-12);

  const auto trine = povm_to_detection(trine_povm());
  const auto te = canonical_naimark(trine);
  CHECK(te.ancilla_dim == 3);
  const auto tr = recovered_povm(te);
  for (std::size_t x = 0; x < 3; ++x) CHECK(oracle::max_abs(tr.elements[x] - trine_povm().elements[x]) <= 1e-8);

  const auto pe = canonical_naimark(photodetector_instrument(4));
  const auto pr = recovered_povm(pe);
  for (std::size_t n = 0; n < 4; ++n) CHECK(oracle::max_abs(pr.elements[n] - projector(basis_vector(4, n))) <= 1e-8);

  Rng rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + rng.index(4), n = 1 + rng.index(6);
    const auto inst = random_instrument(rng, d, n);
    const auto e = canonical_naimark(inst);
    CHECK(unitarity_violation(e.unitary) <= 1e-9);
    const auto r = recovered_povm(e);
    const auto src = detection_to_povm(inst);
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(oracle::max_abs(r.elements[x] - src.elements[x]) <= 1e-8);
      for (std::size_t i = 0; i < d; ++i) {
        const CVector branch = extension_branch(e, basis_vector(d, i), x);
        CHECK(oracle::max_abs(CMatrix(branch - inst.detection_ops[x] * basis_vector(d, i))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("Naimark extension with an arbitrary ancilla state") {
  Rng rng(37);
  const auto inst = random_instrument(rng, 2, 3);
  const CVector omega = random_pure_state(rng, 3);
  const auto e = canonical_naimark(inst, omega);
  CHECK(unitarity_violation(e.unitary) <= 1e-9);
  const auto r = recovered_povm(e);
  const auto src = detection_to_povm(inst);
  for (std::size_t x = 0; x < 3; ++x) CHECK(oracle::max_abs(r.elements[x] - src.elements[x]) <= 1e-8);
}

TEST_CASE("extension statistics") {
  const auto trine = povm_to_detection(trine_povm());
  const auto ext = canonical_naimark(trine);
  const auto stats = extension_statistics(ext, DensityOperator::pure(basis_vector(2, 0)));
  double total = 0.0;
  for (std::size_t x = 0; x < 3; ++x) {
    const double c = std::cos(2.0 * M_PI * static_cast<double>(x) / 3.0);
    CHECK(std::abs(stats.probabilities[x] - 2.0 / 3.0 * c * c) <= 1e-12);
    total += stats.probabilities[x];
  }
  CHECK(total == doctest::Approx(1.0));

  Rng rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.index(3), n = 2 + rng.index(4);
    const auto inst = random_instrument(rng, d, n);
    const auto e = canonical_naimark(inst);
    for (const auto& rho : {DensityOperator::maximally_mixed(d), DensityOperator::from(random_density_matrix(rng, d))}) {
      const auto s = extension_statistics(e, rho);
      const auto m = measure(rho, inst);
      for (std::size_t x = 0; x < n; ++x) CHECK(std::abs(s.probabilities[x] - m.probabilities[x]) <= 1e-9);
      for (const auto& rec : m.records) {
        REQUIRE(s.conditional_states[rec.outcome].has_value());
        CHECK(oracle::max_abs(s.conditional_states[rec.outcome]->matrix() - rec.state.matrix()) <= 1e-8);
      }
    }
  }
}

TEST_CASE("Naimark partner state equals the POVM conditional state") {
  Rng rng(39);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instrument(rng, 2, 3);
    const auto e = canonical_naimark(inst);
    const auto povm = detection_to_povm(inst);
    const auto rho_ab = DensityOperator::from(random_density_matrix(rng, 6), SystemDims{2, 3});
    for (std::size_t x = 0; x < 3; ++x) {
      const auto via_ext = extension_partner_state(e, rho_ab, x);
      const auto direct = conditional_state(rho_ab, povm.elements[x]);
      CHECK(std::abs(via_ext.probability - direct.probability) <= 1e-9);
      CHECK(oracle::max_abs(via_ext.state->matrix() - direct.state->matrix()) <= 1e-9);
    }
  }
}

TEST_CASE("quantum roulette") {
  const std::vector<CMatrix> one = {sigma_z_basis()};
  const std::vector<double> w1 = {1.0};
  const auto single = quantum_roulette(one, w1);
  CHECK(oracle::max_abs(single.povm.elements[0] - projector(basis_vector(2, 0))) <= 1e-15);

  const std::vector<CMatrix> zx = {sigma_z_basis(), sigma_x_basis()};
  const std::vector<double> half = {0.5, 0.5};
  const auto rl = quantum_roulette(zx, half);
  const CMatrix p0 = rl.povm.elements[0];
  CHECK(oracle::max_abs(p0 * p0 - p0) > 0.1);
  CHECK(rl.probe.projector_defect <= 1e-10);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      const CMatrix prod = rl.probe.projectors[x] * rl.probe.projectors[y];
      const CMatrix expected = x == y ? rl.probe.projectors[x] : CMatrix::Zero(prod.rows(), prod.cols());
      CHECK(oracle::max_abs(prod - expected) <= 1e-10);
    }

  Rng rng(40);
  const auto rho = DensityOperator::from(random_density_matrix(rng, 2));
  const auto probe = roulette_probe_statistics(rl, rho);
  const auto mixed = born_rule(rho, rl.povm);
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(std::abs(probe[x] - mixed[x]) <= 1e-10);
    const auto a = roulette_probe_post_state(rl, rho, x);
    const auto b = roulette_mixed_post_state(rl, rho, x);
    CHECK(oracle::max_abs(a.state->matrix() - b.state->matrix()) <= 1e-9);
    CMatrix expected = CMatrix::Zero(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const CMatrix pk = projector(zx[k].col(static_cast<Eigen::Index>(x)));
      expected += 0.5 * pk * rho.matrix() * pk;
    }
    CHECK(oracle::max_abs(b.state->matrix() - expected / probe[x]) <= 1e-12);
  }

  std::vector<CMatrix> bases;
  std::vector<double> weights;
  for (int j = 0; j < 8; ++j) {
    bases.push_back(sigma_alpha_basis(j * M_PI / 8.0));
    weights.push_back(1.0 / 8.0);
  }
  const auto disc = quantum_roulette(bases, weights);
  CHECK(assert_povm(disc.povm.elements).ok());
  CHECK(disc.probe.projector_defect <= 1e-10);
  CHECK(disc.probe.probe_dim == 8);

  const std::vector<double> bad = {0.5, 0.6};
  CHECK_THROWS_AS(quantum_roulette(zx, bad), Error);
}

TEST_CASE("Heisenberg instrument") {
  const auto inst = heisenberg_instrument(sigma_z_basis(), sigma_x_basis(), 0);
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = DensityOperator::from(random_density_matrix(rng, 2));
    const auto res = measure(rho, inst);
    CHECK(std::abs(res.probabilities[0] - rho.matrix()(0, 0).real()) <= 1e-12);
    CHECK(std::abs(res.probabilities[1] - rho.matrix()(1, 1).real()) <= 1e-12);
    for (const auto& rec : res.records) CHECK(oracle::max_abs(rec.state.matrix() - projector(plus())) <= 1e-12);
  }
  const auto qnd = heisenberg_instrument(sigma_z_basis(), sigma_z_basis(), 1);
  const auto res = measure(DensityOperator::pure(plus()), qnd);
  for (const auto& rec : res.records) CHECK(oracle::max_abs(rec.state.matrix() - projector(basis_vector(2, 1))) <= 1e-12);

  const CMatrix a = random_unitary(rng, 3), b = random_unitary(rng, 3);
  const auto i3 = heisenberg_instrument(a, b, 2);
  CMatrix sum = CMatrix::Zero(3, 3);
  for (const auto& m : i3.detection_ops) sum += m.adjoint() * m;
  CHECK(oracle::max_abs(sum - CMatrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("sampling") {
  const auto z = sigma_z_instrument();
  const auto all0 = sample_outcomes(DensityOperator::pure(basis_vector(2, 0)), z, 1000, 17);
  CHECK(all0.counts == std::vector<std::uint64_t>{1000, 0});

  const auto rho = DensityOperator::pure(plus());
  const auto a = sample_outcomes(rho, z, 5000, 99), b = sample_outcomes(rho, z, 5000, 99);
  CHECK(a.counts == b.counts);
  const auto c = sample_outcomes(rho, z, 5000, 100);
  CHECK(c.counts[0] + c.counts[1] == 5000);

  const auto trine = sample_outcomes(DensityOperator::pure(basis_vector(2, 0)), povm_to_detection(trine_povm()), 100000, 7);
  CHECK(trine.within_bound);
  for (std::size_t x = 0; x < 3; ++x) {
    const double p = trine.probabilities[x];
    CHECK(std::abs(trine.frequencies[x] - p) <= 5.0 * std::sqrt(p * (1.0 - p) / 1e5));
  }
  CHECK_THROWS_AS(sample_outcomes(rho, z, 0, 1), Error);
}
