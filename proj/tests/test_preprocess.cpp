#include <gtest/gtest.h>

#include <random>

#include "lnorm/oracle.hpp"
#include "lnorm/preprocess.hpp"
#include "test_support.hpp"

namespace lnorm {
namespace {

using testing::reducible_4x4;
using testing::planted_matrix;
using K = PreprocessStep::Kind;

TEST(Preprocess, WorkedExampleL1) {
  const auto out = preprocess(reducible_4x4(), SolveMode::l1());
  EXPECT_EQ(out.matrix, IntMatrix::from_rows({{12, -21, 6, -3}, {1, -3, 4, 4}}));
  ASSERT_EQ(out.report.steps.size(), 2u);
  EXPECT_EQ(out.report.steps[0], (PreprocessStep{K::RemovedZeroRow, 0}));
  EXPECT_EQ(out.report.steps[1], (PreprocessStep{K::MergedRows, 0, 1, 2, 1}));
  EXPECT_EQ(out.report.original_rows, 4u);
  EXPECT_EQ(out.report.final_rows, 2u);
  EXPECT_EQ(out.report.final_cols, 4u);
  EXPECT_EQ(oracle::solve(reducible_4x4(), SolveMode::l1()).value, oracle::solve(out.matrix, SolveMode::l1()).value);
}

TEST(Preprocess, IdentityUnchangedForSignedModes) {
  const auto id = IntMatrix::from_rows({{1, 0}, {0, 1}});
  for (auto mode : {SolveMode::l1(), SolveMode::marg()}) {
    const auto out = preprocess(id, mode);
    EXPECT_EQ(out.matrix, id) << testing::mode_tag(mode);
    EXPECT_TRUE(out.report.steps.empty()) << testing::mode_tag(mode);
  }
}

TEST(Preprocess, IdentityCollapsesForLd) {
  // both columns are non-negative, so they merge; the two equal rows follow
  const auto id = IntMatrix::from_rows({{1, 0}, {0, 1}});
  for (unsigned d : {2u, 3u}) {
    const auto out = preprocess(id, SolveMode::ld(d));
    EXPECT_EQ(out.matrix, IntMatrix::from_rows({{2}}));
    EXPECT_EQ(out.report.steps.size(), 2u);
  }
}

TEST(Preprocess, LdRowsMergeOnlyWithPositiveFactor) {
  const auto m = IntMatrix::from_rows({{1, -2}, {2, -4}, {3, 5}});
  const auto out = preprocess(m, SolveMode::ld(2));
  EXPECT_EQ(out.matrix, IntMatrix::from_rows({{3, -6}, {3, 5}}));
  EXPECT_EQ(oracle::solve(m, SolveMode::ld(2)).value, 17);
  EXPECT_EQ(oracle::solve(out.matrix, SolveMode::ld(2)).value, 17);

  const auto neg = IntMatrix::from_rows({{1, -2}, {-2, 4}, {3, 5}});
  EXPECT_EQ(preprocess(neg, SolveMode::ld(2)).matrix, neg);
  // the same pair is merged by subtraction in L1 mode: (1,-2) - (-2,4) = 3 * (1,-2)
  const auto l1 = preprocess(neg, SolveMode::l1());
  ASSERT_FALSE(l1.report.steps.empty());
  EXPECT_EQ(l1.report.steps[0], (PreprocessStep{K::MergedRows, 0, 1, -2, 1}));
}

TEST(Preprocess, RationalFactorIsReduced) {
  const auto m = IntMatrix::from_rows({{4, 6, 2}, {-6, -9, -3}, {1, 1, 1}});
  const auto out = preprocess(m, SolveMode::l1());
  ASSERT_FALSE(out.report.steps.empty());
  EXPECT_EQ(out.report.steps[0], (PreprocessStep{K::MergedRows, 0, 1, -3, 2}));
  // (4,6,2) - (-6,-9,-3) = (1 + 3/2) * (4,6,2)
  EXPECT_EQ(out.matrix, IntMatrix::from_rows({{10, 15, 5}, {1, 1, 1}}));
}

TEST(Preprocess, LdMergesSignUniformColumns) {
  const auto m = IntMatrix::from_rows({{1, -2, 5}, {0, -1, -3}, {4, 0, 2}});
  const auto out = preprocess(m, SolveMode::ld(2));
  EXPECT_EQ(out.matrix, IntMatrix::from_rows({{3, 5}, {1, -3}, {4, 2}}));
  ASSERT_EQ(out.report.steps.size(), 1u);
  EXPECT_EQ(out.report.steps[0], (PreprocessStep{K::MergedSignUniformCols, 0, 1}));
  EXPECT_EQ(oracle::solve(m, SolveMode::ld(2)).value, oracle::solve(out.matrix, SolveMode::ld(2)).value);
  // not applied outside LD
  EXPECT_EQ(preprocess(m, SolveMode::l1()).matrix.cols(), 3u);
}

TEST(Preprocess, L1TransposesTallMatrices) {
  const auto m = IntMatrix::from_rows({{1, 2}, {3, -1}, {-2, 5}});
  const auto out = preprocess(m, SolveMode::l1());
  EXPECT_EQ(out.matrix, m.transposed());
  EXPECT_EQ(out.report.steps.back().kind, K::Transposed);
  EXPECT_EQ(preprocess(m, SolveMode::marg()).matrix, m);
  EXPECT_EQ(preprocess(m, SolveMode::ld(2)).matrix.rows(), 3u);
}

TEST(Preprocess, MargKeepsFirstRowAndColumn) {
  // zero first row alone stays; proportional pairs through row 1 / column 1 stay
  const auto m = IntMatrix::from_rows({{0, 0, 0}, {1, 2, 3}, {2, 4, 6}});
  const auto out = preprocess(m, SolveMode::marg());
  EXPECT_FALSE(out.report.mode_downgraded);
  // rows 2,3 merge (factor 2), then columns 2,3 merge (factor 3/2)
  EXPECT_EQ(out.matrix, IntMatrix::from_rows({{0, 0}, {3, 15}}));
  EXPECT_EQ(oracle::solve(m, SolveMode::marg()).value, oracle::solve(out.matrix, SolveMode::marg()).value);

  const auto first_col_zero = IntMatrix::from_rows({{1, 2, 2}, {0, 1, 3}});
  EXPECT_EQ(preprocess(first_col_zero, SolveMode::marg()).matrix, first_col_zero);

  const auto through_row1 = IntMatrix::from_rows({{1, 2}, {2, 4}, {1, -1}});
  EXPECT_EQ(preprocess(through_row1, SolveMode::marg()).matrix, through_row1);
}

TEST(Preprocess, MargDowngradesWhenFirstRowAndColumnVanish) {
  const auto m = IntMatrix::from_rows({{0, 0, 0}, {0, 3, -1}, {0, 2, 5}});
  const auto out = preprocess(m, SolveMode::marg());
  EXPECT_TRUE(out.report.mode_downgraded);
  EXPECT_EQ(out.report.solved_mode(SolveMode::marg()), SolveMode::l1());
  EXPECT_EQ(out.matrix, IntMatrix::from_rows({{3, -1}, {2, 5}}));
  EXPECT_EQ(oracle::solve(m, SolveMode::marg()).value, oracle::solve(out.matrix, SolveMode::l1()).value);
}

TEST(Preprocess, AllZeroReducesToEmpty) {
  for (auto mode : testing::all_modes()) {
    const auto out = preprocess(IntMatrix::from_rows({{0, 0}, {0, 0}}), mode);
    EXPECT_TRUE(out.matrix.empty()) << testing::mode_tag(mode);
    EXPECT_EQ(replay(IntMatrix::from_rows({{0, 0}, {0, 0}}), out.report), out.matrix);
  }
}

// Reductions leave the norm unchanged, replay reproduces the result, L1
// output is never tall, and a second pass changes nothing.
TEST(PreprocessProperty, InvariantsOnPlantedMatrices) {
  std::mt19937_64 rng(20240601);
  const SolveMode modes[] = {SolveMode::l1(), SolveMode::marg(), SolveMode::ld(2), SolveMode::ld(3)};
  int reduced = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const IntMatrix m = planted_matrix(rng);
    for (auto mode : modes) {
      const auto out = preprocess(m, mode);
      const SolveMode solved = out.report.solved_mode(mode);
      reduced += out.report.steps.empty() ? 0 : 1;

      ASSERT_EQ(oracle::solve(m, mode).value, oracle::solve(out.matrix, solved).value)
          << testing::mode_tag(mode) << "\n" << m;
      ASSERT_EQ(replay(m, out.report), out.matrix);
      ASSERT_EQ(out.report.final_rows, out.matrix.rows());
      if (solved == SolveMode::l1()) {
        ASSERT_LE(out.matrix.rows(), out.matrix.cols());
      }

      int transposes = 0;
      for (const auto& s : out.report.steps) transposes += s.kind == K::Transposed;
      ASSERT_LE(transposes, 1);
      if (transposes) {
        ASSERT_EQ(solved, SolveMode::l1());
      }

      ASSERT_EQ(preprocess(out.matrix, solved).matrix, out.matrix) << testing::mode_tag(mode) << "\n" << m;
      ASSERT_EQ(preprocess(out.matrix, mode).matrix, out.matrix) << testing::mode_tag(mode) << "\n" << m;
    }
  }
  EXPECT_GT(reduced, 500);  // the planted structure is actually exercised
}

}  // namespace
}  // namespace lnorm
