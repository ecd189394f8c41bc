#include <doctest.h>

#include <cmath>

#include "qkit/cv_joint.hpp"
#include "qkit/random.hpp"
#include "support.hpp"

using namespace qkit;

namespace {

const Complex kI(0.0, 1.0);

// Fock-basis moment oracle: <n|Q^2|n> = n + 1/2 for the untruncated ladder.
double fock_q2(std::size_t n) { return static_cast<double>(n) + 0.5; }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

// Random state supported on Fock levels below `support`.
CMatrix low_state(Rng& rng, std::size_t dim, std::size_t support) {
  CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  rho.topLeftCorner(static_cast<Eigen::Index>(support), static_cast<Eigen::Index>(support)) =
      random_density_matrix(rng, support);
  return rho;
}

}  // namespace

TEST_CASE("Fock space operators") {
  const auto s = build_fock(2);
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = std::sqrt(2.0);
  CHECK(oracle::max_abs(s.a() - a) == 0.0);
  CHECK(hermiticity_violation(s.q()) == 0.0);
  CHECK(hermiticity_violation(s.p()) == 0.0);
  const CMatrix c = commutator(s.q(), s.p());
  CHECK(std::abs(c(0, 0) - kI) <= 1e-15);
  CHECK(std::abs(c(2, 2) + 2.0 * kI) <= 1e-14);

  const auto big = build_fock(40);
  const CMatrix cb = commutator(big.q(), big.p());
  CHECK(std::abs(cb(40, 40) + 40.0 * kI) <= 1e-12);
  CHECK(oracle::max_abs(CMatrix(cb.topLeftCorner(40, 40) - kI * CMatrix::Identity(40, 40))) <= 1e-12);

  CHECK_THROWS_AS(build_fock(1), Error);
  try {
    build_fock(5000);
    FAIL("expected dimension-cap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionCap);
  }
}

TEST_CASE("coherent states") {
  const auto s = build_fock(40);
  const CVector vac = coherent_state(0.0, s);
  CHECK(oracle::max_abs(CMatrix(vac - s.number_state(0))) == 0.0);

  const CVector one = coherent_state(1.0, s);
  CHECK(std::abs(one.dot(s.q() * one).real() - std::sqrt(2.0)) <= 1e-8);
  for (Complex alpha : {Complex(1, 0), Complex(1, 1), Complex(-0.5, 2)}) {
    const CVector psi = coherent_state(alpha, s);
    const double mq = psi.dot(s.q() * psi).real(), mp = psi.dot(s.p() * psi).real();
    CHECK(std::abs(mq - std::sqrt(2.0) * alpha.real()) <= 1e-8);
    CHECK(std::abs(mp - std::sqrt(2.0) * alpha.imag()) <= 1e-8);
    const double vq = psi.dot(s.q() * s.q() * psi).real() - mq * mq;
    const double vp = psi.dot(s.p() * s.p() * psi).real() - mp * mp;
    CHECK(std::abs(vq - 0.5) <= 1e-6);
    CHECK(std::abs(vp - 0.5) <= 1e-6);
    CHECK(std::abs(vq * vp - 0.25) <= 1e-6);
  }
  CHECK_THROWS_AS(coherent_state(Complex(3.5, 0), s), Error);
  CHECK_THROWS_AS(coherent_state(Complex(1.2, 0), build_fock(6)), Error);
}

TEST_CASE("joint pair construction") {
  const auto s = build_fock(6);
  const auto pair = joint_pair(s);
  CHECK(oracle::max_abs(pair.x - (oracle::kron(s.q(), CMatrix::Identity(7, 7)) + oracle::kron(CMatrix::Identity(7, 7), s.q()))) <= 1e-15);
  CHECK(oracle::max_abs(pair.y - (oracle::kron(s.p(), CMatrix::Identity(7, 7)) - oracle::kron(CMatrix::Identity(7, 7), s.p()))) <= 1e-15);
  CHECK(hermiticity_violation(pair.x) <= 1e-15);
  CHECK(hermiticity_violation(pair.y) <= 1e-15);
  CHECK(pair.commutator_residual <= 1e-12);

  const CMatrix c = commutator(pair.x, pair.y);
  double below = 0.0;
  for (Eigen::Index r = 0; r < 49; ++r)
    for (Eigen::Index k = 0; k < 49; ++k)
      if (r / 7 < 6 && r % 7 < 6 && k / 7 < 6 && k % 7 < 6) below = std::max(below, std::abs(c(r, k)));
  CHECK(below <= 1e-12);
  CHECK(std::abs(std::abs(c(42, 42)) - 7.0) <= 1e-12);
}

TEST_CASE("joint statistics on coherent states") {
  const auto s = build_fock(40);
  const auto pair = joint_pair(s);
  const auto vac = DensityOperator::pure(s.number_state(0));
  for (Complex alpha : {Complex(0, 0), Complex(1, 0), Complex(1, 1)}) {
    const auto rho = DensityOperator::pure(coherent_state(alpha, s));
    const auto r = joint_statistics(pair, rho, vac);
    CHECK(std::abs(r.var_x - 1.0) <= 1e-6);
    CHECK(std::abs(r.var_y - 1.0) <= 1e-6);
    CHECK(std::abs(r.product - 1.0) <= 2e-6);
    CHECK(std::abs(r.product - r.commutator_sq) <= 2e-6);
    CHECK(std::abs(r.product / r.single_bound - 4.0) <= 1e-5);
    CHECK(std::abs(r.mean_x - r.mean_q_a) <= 1e-9);
    CHECK(std::abs(r.mean_y - r.mean_p_a) <= 1e-9);
    CHECK(std::abs(r.var_x - r.var_x_rhs) <= 1e-6);
    CHECK(std::abs(r.var_y - r.var_y_rhs) <= 1e-6);
    CHECK(r.product >= r.chain_bound - 1e-9);
    CHECK(std::abs(r.product - r.product_expansion) <= 1e-9);
  }
}

TEST_CASE("joint statistics with a Fock input") {
  const auto s = build_fock(10);
  const auto pair = joint_pair(s);
  const auto vac = DensityOperator::pure(s.number_state(0));
  const auto r = joint_statistics(pair, DensityOperator::pure(s.number_state(1)), vac);
  CHECK(std::abs(r.var_x - (fock_q2(1) + fock_q2(0))) <= 1e-12);
  CHECK(std::abs(r.var_x - 2.0) <= 1e-12);

  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = DensityOperator::from(low_state(rng, 11, 5));
    const auto j = joint_statistics(pair, rho, vac);
    CHECK(std::abs(j.mean_x - j.mean_q_a) <= 1e-6);
    CHECK(std::abs(j.mean_y - j.mean_p_a) <= 1e-6);
    CHECK(std::abs(j.var_x - j.var_x_rhs) <= 1e-9);
    CHECK(j.product >= j.chain_bound - 1e-9);
  }

  const auto displaced = DensityOperator::pure(coherent_state(0.5, s));
  try {
    joint_statistics(pair, vac, displaced);
    FAIL("expected precondition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("uncertainty relation") {
  const auto s = build_fock(20);
  const auto vac = uncertainty_check(DensityOperator::pure(s.number_state(0)), s.q(), s.p());
  CHECK(vac.product == doctest::Approx(0.25));
  CHECK(vac.commutator_bound == doctest::Approx(0.25));
  CHECK(vac.strong_holds);

  const auto one = uncertainty_check(DensityOperator::pure(s.number_state(1)), s.q(), s.p());
  CHECK(one.product == doctest::Approx(2.25));
  CHECK(one.weak_holds);

  const auto q = uncertainty_check(DensityOperator::pure(basis_vector(2, 0)), pauli(1), pauli(2));
  CHECK(q.product == doctest::Approx(1.0));
  CHECK(q.commutator_bound == doctest::Approx(1.0));
  CHECK(q.correlation_term == doctest::Approx(0.0));
  CHECK(q.strong_holds);
  // The literal reading of F would push the bound to 2 here.
  CHECK(q.literal_f_term == doctest::Approx(1.0));

  Rng rng(72);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = DensityOperator::from(low_state(rng, 21, 10));
    const auto u = uncertainty_check(rho, s.q(), s.p());
    CHECK(u.strong_holds);
    CHECK(u.weak_holds);
    CHECK(u.product >= u.correlation_term + u.commutator_bound - 1e-9);
  }
  CHECK_THROWS_AS(uncertainty_check(DensityOperator::maximally_mixed(2), pauli(1), CMatrix(pauli(1) + kI * pauli(0))),
                  HermiticityError);
}

TEST_CASE("minimum uncertainty residual") {
  const auto s20 = build_fock(20);
  CHECK(mus_residual(s20.number_state(0), s20.q(), s20.p(), 1.0) <= 1e-8);
  const auto s40 = build_fock(40);
  CHECK(mus_residual(coherent_state(1.0, s40), s40.q(), s40.p(), 1.0) <= 1e-6);
  CHECK(std::abs(mus_residual(s40.number_state(1), s40.q(), s40.p(), 1.0) - std::sqrt(2.0)) <= 1e-12);
  CHECK_THROWS_AS(mus_residual(s40.number_state(1), s40.q(), s40.p(), 0.0), Error);
}
