#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "entq/oracle.hpp"
#include "entq/reduce.hpp"
#include "support.hpp"

using namespace entq;

TEST_CASE("SubsetSpec validation") {
  CHECK_NOTHROW(SubsetSpec({1, 3, 4}, 4));
  CHECK_THROWS_AS(SubsetSpec({0, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SubsetSpec({1, 4}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SubsetSpec({2, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(SubsetSpec({2, 2}, 3), std::invalid_argument);
  CHECK(SubsetSpec({1, 3}, 5).complement() == SubsetSpec({2, 4, 5}, 5));
  CHECK(SubsetSpec({1, 3}, 5).to_string() == "{1,3}");
}

TEST_CASE("enumerate_subsets") {
  const auto s32 = enumerate_subsets(3, 2);
  REQUIRE(s32.size() == 3);
  CHECK(s32[0].sites() == std::vector<int>{1, 2});
  CHECK(s32[1].sites() == std::vector<int>{1, 3});
  CHECK(s32[2].sites() == std::vector<int>{2, 3});

  const auto s52 = enumerate_subsets(5, 2);
  const auto s53 = enumerate_subsets(5, 3);
  CHECK(s52.size() == 10);
  CHECK(s53.size() == 10);
  // complements of the m=2 list, as a set, are the m=3 list
  std::set<std::vector<int>> comp, three;
  for (const auto& s : s52) comp.insert(s.complement().sites());
  for (const auto& s : s53) three.insert(s.sites());
  CHECK(comp == three);

  for (int n = 2; n <= 10; ++n) {
    for (int m = 1; m < n; ++m) {
      const auto all = enumerate_subsets(n, m);
      CHECK(all.size() == binomial(n, m));
      for (std::size_t i = 1; i < all.size(); ++i) {
        CHECK(std::lexicographical_compare(all[i - 1].sites().begin(),
                                           all[i - 1].sites().end(),
                                           all[i].sites().begin(), all[i].sites().end()));
      }
    }
  }
  CHECK_THROWS_AS(enumerate_subsets(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_subsets(5, 5), std::invalid_argument);
  CHECK(binomial(26, 13) == 10400600);
}

TEST_CASE("reduced density matrices") {
  SUBCASE("single site of a product state is the local projector") {
    std::mt19937_64 rng(8);
    const auto psi = testing::random_product(3, 4, rng);
    for (int site = 1; site <= 4; ++site) {
      const auto rho = reduced_density_matrix(psi, SubsetSpec({site}, 4));
      CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    }
  }
  SUBCASE("site 1 of GHZ_3 is diag(1/2, 1/2)") {
    const auto rho = reduced_density_matrix(testing::ghz(2, 3), SubsetSpec({1}, 3));
    CHECK((rho - CMatrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("sites {1,2} of W_5 have spectrum {3/5, 2/5, 0, 0}") {
    const CMatrix rho = reduced_density_matrix(testing::w_state(5), SubsetSpec({1, 2}, 5));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    const auto ev = es.eigenvalues();
    CHECK(std::abs(ev(0)) < 1e-15);
    CHECK(std::abs(ev(1)) < 1e-15);
    CHECK(std::abs(ev(2) - 0.4) < 1e-15);
    CHECK(std::abs(ev(3) - 0.6) < 1e-15);
  }
  SUBCASE("Hermitian, PSD, unit trace; digit order follows ascending sites") {
    const auto psi = haar_state(3, 4, 21);
    for (int m = 1; m <= 3; ++m) {
      for (const auto& s : enumerate_subsets(4, m)) {
        const CMatrix rho = reduced_density_matrix(psi, s);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
      }
    }
    // |0 1 2 0> restricted to {2,3} is |1 2>, local index 1*3 + 2 = 5
    const auto basis = build({Family::kBasis, 3, 4, {0, 1, 2, 0}, {}, 0});
    const CMatrix rho = reduced_density_matrix(basis, SubsetSpec({2, 3}, 4));
    CHECK(std::abs(rho(5, 5) - 1.0) < 1e-15);
  }
  CHECK_THROWS_AS(reduced_density_matrix(testing::ghz(2, 3), SubsetSpec({}, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(reduced_density_matrix(testing::ghz(2, 3), SubsetSpec({1}, 4)),
                  std::invalid_argument);
}

TEST_CASE("purity values") {
  std::mt19937_64 rng(4);
  const auto prod = testing::random_product(2, 6, rng);
  for (int m = 1; m < 6; ++m)
    for (const auto& s : enumerate_subsets(6, m))
      CHECK(std::abs(purity(prod, s) - 1.0) < 1e-12);

  for (int n = 2; n <= 7; ++n) {
    const auto g = testing::ghz(2, n);
    for (int m = 1; m < n; ++m)
      for (const auto& s : enumerate_subsets(n, m))
        CHECK(std::abs(purity(g, s) - 0.5) < 1e-12);
  }

  // oracle: 13/25 and 17/25
  const auto w5 = testing::w_state(5);
  CHECK(std::abs(purity(w5, SubsetSpec({1, 2}, 5)) - 0.52) < 1e-12);
  CHECK(std::abs(purity(w5, SubsetSpec({4}, 5)) - 0.68) < 1e-12);
  CHECK(std::abs(purity(w5, SubsetSpec({1, 3, 5}, 5)) - 0.52) < 1e-12);

  CHECK_THROWS_AS(purity(w5, SubsetSpec({1, 2, 3, 4, 5}, 5)), std::invalid_argument);
  CHECK_THROWS_AS(gram_purity(w5, SubsetSpec({}, 5)), std::invalid_argument);
}

TEST_CASE("purity_report") {
  const auto rep = purity_report(testing::ghz(2, 5), 2);
  CHECK(rep.m == 2);
  REQUIRE(rep.per_subset.size() == 10);
  for (const auto& e : rep.per_subset) CHECK(std::abs(e.purity - 0.5) < 1e-12);
  CHECK(std::abs(rep.average - 0.5) < 1e-12);
  CHECK(rep.per_subset.front().subset == SubsetSpec({1, 2}, 5));
  CHECK(rep.per_subset.back().subset == SubsetSpec({4, 5}, 5));

  std::mt19937_64 rng(1);
  const auto prod = testing::random_product(3, 4, rng);
  for (int m = 1; m < 4; ++m) CHECK(std::abs(purity_report(prod, m).average - 1.0) < 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = haar_state(2, 5, seed);
    const auto r2 = purity_report(psi, 2);
    const auto r3 = purity_report(psi, 3);
    CHECK(std::abs(r2.average - r3.average) < 1e-12);
    // the average is the arithmetic mean of the listed purities
    double sum = 0.0;
    for (const auto& e : r2.per_subset) sum += e.purity;
    CHECK(std::abs(sum / 10 - r2.average) < 1e-12);
    // oracle route for the average at m = 2
    double osum = 0.0;
    for (const auto& s : enumerate_subsets(5, 2)) osum += oracle::oracle_purity(psi, s);
    CHECK(std::abs(osum / 10 - r2.average) < 1e-12);
  }
  CHECK_THROWS_AS(purity_report(prod, 0), std::invalid_argument);
  CHECK_THROWS_AS(purity_report(prod, 4), std::invalid_argument);
}

TEST_CASE("purity_report is independent of the worker count") {
  const auto psi = haar_state(3, 6, 77);
  const auto one = purity_report(psi, 3, 1);
  const auto four = purity_report(psi, 3, 4);
  REQUIRE(one.per_subset.size() == four.per_subset.size());
  for (std::size_t i = 0; i < one.per_subset.size(); ++i) {
    CHECK(one.per_subset[i].subset == four.per_subset[i].subset);
    CHECK(one.per_subset[i].purity == four.per_subset[i].purity);
  }
  CHECK(one.average == four.average);
}

TEST_CASE("property: complement identity, bounds, fast path vs oracle") {
  for (int d : {2, 3}) {
    for (int n = 2; n <= 6; ++n) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto psi = haar_state(d, n, 500 + seed);
        const auto rho = oracle::full_density_matrix(psi);
        for (int m = 1; m < n; ++m) {
          const double lower = std::pow(static_cast<double>(d), -std::min(m, n - m));
          for (const auto& s : enumerate_subsets(n, m)) {
            const double p = purity(psi, s);
            CHECK(std::abs(gram_purity(psi, s) - gram_purity(psi, s.complement())) < 1e-12);
            CHECK(p >= lower - 1e-10);
            CHECK(p <= 1.0 + 1e-10);
            const auto r = oracle::partial_trace_naive(rho, d, n, s);
            CHECK(std::abs(p - oracle::purity_by_eigenvalues(r)) < 1e-12);
            const CMatrix explicit_rho = reduced_density_matrix(psi, s);
            CHECK(std::abs(p - (explicit_rho * explicit_rho).trace().real()) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("property: local-unitary invariance and permutation covariance") {
  std::mt19937_64 rng(12);
  for (auto [d, n] : {std::pair{2, 5}, {3, 4}, {4, 3}}) {
    const auto psi = haar_state(d, n, 300);
    auto moved = psi;
    for (int site = 1; site <= n; ++site)
      moved = apply_local_unitary(moved, site, testing::random_unitary(d, rng));
    const auto perm = testing::random_permutation(n, rng);
    const auto relabeled = permute_sites(psi, perm);
    for (int m = 1; m < n; ++m) {
      std::vector<double> before, after;
      for (const auto& s : enumerate_subsets(n, m)) {
        const double p = purity(psi, s);
        CHECK(std::abs(p - purity(moved, s)) < 1e-10);
        std::vector<int> image;
        for (int site : s.sites()) image.push_back(perm[site - 1]);
        std::sort(image.begin(), image.end());
        CHECK(std::abs(p - purity(relabeled, SubsetSpec(image, n))) < 1e-12);
        before.push_back(p);
        after.push_back(purity(relabeled, s));
      }
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(std::abs(before[i] - after[i]) < 1e-12);
    }
  }
}

TEST_CASE("pairwise_sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(std::abs(pairwise_sum(v) - 100.0) < 1e-12);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{1.5}) == 1.5);
}
