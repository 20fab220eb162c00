#include <dforge/coefficient_table.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace dforge;

namespace {

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override
  {
    dir_ = std::filesystem::temp_directory_path() /
           ("dforge-cache-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

}  // namespace

TEST(Table, TextRoundTrip)
{
  for (const auto& [f, params] : std::vector<std::pair<std::string, std::map<std::string, std::string>>>{
           {"tau", {{"d", "9"}}}, {"c1", {}}, {"c2", {}}, {"cohenH", {{"k", "3"}}}}) {
    const auto t = compute_table(f, params, table_default_min(f), 12);
    EXPECT_EQ(table_from_text(to_text(t)), t) << f;
  }
}

TEST(Table, Values)
{
  const auto c1 = compute_table("c1", {}, -1, 4);
  EXPECT_EQ(c1.values.at(-1), 1);
  EXPECT_EQ(c1.values.at(0), 10);
  EXPECT_EQ(c1.values.at(3), -64);
  EXPECT_EQ(c1.values.at(4), 108);
  const auto t9 = compute_table("tau", {{"d", "9"}}, 0, 11);
  EXPECT_EQ(t9.values.at(3), 1);
  EXPECT_EQ(t9.values.at(11), -9);
  EXPECT_EQ(compute_table("cohenH", {{"k", "3"}}, 0, 0).values.at(0), make_rational(-1, 252));
}

TEST(Table, Errors)
{
  EXPECT_THROW(compute_table("nope", {}, 0, 1), std::invalid_argument);
  EXPECT_THROW(compute_table("tau", {}, 0, 1), std::invalid_argument);
  EXPECT_THROW(compute_table("tau", {{"d", "9"}}, 3, 1), std::invalid_argument);
  EXPECT_THROW(table_from_text("min=0\n"), std::invalid_argument);
  EXPECT_THROW(table_from_text("function=c1\nfoo=1\n"), std::invalid_argument);
}

TEST_F(CacheTest, ReadBackIsByteIdentical)
{
  const TableCache cache(dir_);
  bool hit = true;
  const auto fresh = cache.get("tau", {{"d", "3"}}, 0, 40, &hit);
  EXPECT_FALSE(hit);
  const auto path = cache.path_for("tau", {{"d", "3"}}, 0, 40);
  EXPECT_EQ(slurp(path), to_text(compute_table("tau", {{"d", "3"}}, 0, 40)));
  const auto again = cache.get("tau", {{"d", "3"}}, 0, 40, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(to_text(again), to_text(fresh));
}

TEST_F(CacheTest, StaleVersionIsRecomputed)
{
  const TableCache cache(dir_);
  const auto path = cache.path_for("c1", {}, -1, 4);
  std::filesystem::create_directories(dir_);
  CoefficientTable stale = compute_table("c1", {}, -1, 4);
  stale.version = "0.0.0-old";
  stale.values[4] = 999;
  {
    std::ofstream out(path);
    out << to_text(stale);
  }
  bool hit = true;
  const auto t = cache.get("c1", {}, -1, 4, &hit);
  EXPECT_FALSE(hit);
  EXPECT_EQ(t.values.at(4), 108);
  EXPECT_EQ(table_from_text(slurp(path)).version, kEngineVersion);
}

TEST_F(CacheTest, CorruptEntryIsRecomputed)
{
  const TableCache cache(dir_);
  std::filesystem::create_directories(dir_);
  {
    std::ofstream out(cache.path_for("c2", {}, -1, 3));
    out << "garbage\n";
  }
  bool hit = true;
  EXPECT_EQ(cache.get("c2", {}, -1, 3, &hit).values.at(0), 4);
  EXPECT_FALSE(hit);
}
