#include <fstream>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "scbench/matrix_io.hpp"
#include "scbench/summary.hpp"

namespace scbench {
namespace {

using testing::TempDir;
using testing::slurp;

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

TEST(MatrixIo, SingleEntryParse) {
  TempDir dir("io");
  write_text(dir / "a.mtx",
             "%%MatrixMarket matrix coordinate integer general\n% comment\n2 2 1\n1 1 5\n");
  auto any = read_matrix(dir / "a.mtx");
  ASSERT_TRUE(std::holds_alternative<CountMatrix>(any));
  const auto& m = std::get<CountMatrix>(any);
  EXPECT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.at(0, 0), 5u);
  EXPECT_EQ(cell_summary(m).library_size, (std::vector<double>{5, 0}));
  EXPECT_EQ(m.gene_ids(), (std::vector<std::string>{"G1", "G2"}));
  EXPECT_EQ(m.cell_ids(), (std::vector<std::string>{"C1", "C2"}));
}

TEST(MatrixIo, EmptyCoordinateSection) {
  TempDir dir("io");
  write_text(dir / "e.mtx", "%%MatrixMarket matrix coordinate integer general\n3 4 0\n");
  const auto m = std::get<CountMatrix>(read_matrix(dir / "e.mtx"));
  EXPECT_EQ(m.n_genes(), 3u);
  EXPECT_EQ(m.n_cells(), 4u);
  EXPECT_EQ(m.nnz(), 0u);
}

TEST(MatrixIo, AllZeroWriteDeclaresZeroEntries) {
  TempDir dir("io");
  write_matrix(CountMatrix(3, 4), dir / "z.mtx", MatrixFormat::MatrixMarket);
  const auto text = slurp(dir / "z.mtx");
  EXPECT_NE(text.find("\n3 4 0\n"), std::string::npos) << text;
}

TEST(MatrixIo, SingleEntryWriteHasOneCoordinateLine) {
  TempDir dir("io");
  auto m = from_triplets<Count>(3, 4, {{1, 2, 7}}, make_ids("G", 3), make_ids("C", 4));
  write_matrix(m, dir / "s.mtx", MatrixFormat::MatrixMarket);
  std::ifstream in(dir / "s.mtx");
  std::string line;
  std::vector<std::string> body;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') body.push_back(line);
  ASSERT_EQ(body.size(), 2u);
  EXPECT_EQ(body[0], "3 4 1");
  EXPECT_EQ(body[1], "2 3 7");
}

TEST(MatrixIo, MalformedHeaderReportsLine) {
  TempDir dir("io");
  write_text(dir / "bad.mtx", "%%MatrixMarket matrix coordinate integer general\n% c\nthree 4 0\n");
  try {
    read_matrix(dir / "bad.mtx");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  write_text(dir / "banner.mtx", "%%MatrixMarket matrix array real general\n2 2\n");
  EXPECT_THROW(read_matrix(dir / "banner.mtx"), ParseError);
}

TEST(MatrixIo, NegativeValueIsDomainError) {
  TempDir dir("io");
  write_text(dir / "n.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 -1.5\n");
  EXPECT_THROW(read_matrix(dir / "n.mtx"), DomainError);
  write_text(dir / "n.csv", "gene,c1,c2\ng1,1,-2\n");
  EXPECT_THROW(read_matrix(dir / "n.csv"), DomainError);
}

TEST(MatrixIo, DuplicateCoordinateIsDomainError) {
  TempDir dir("io");
  write_text(dir / "d.mtx",
             "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 3\n1 1 4\n");
  EXPECT_THROW(read_matrix(dir / "d.mtx"), DomainError);
}

TEST(MatrixIo, MissingFileIsIoErrorNamingPath) {
  try {
    read_matrix("/nonexistent/x.mtx");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/x.mtx"), std::string::npos);
  }
}

TEST(MatrixIo, WriteToUnwritablePathNamesPath) {
  try {
    write_matrix(CountMatrix(1, 1), "/nonexistent/dir/out.mtx", MatrixFormat::MatrixMarket);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/out.mtx"), std::string::npos);
  }
}

TEST(MatrixIo, SidecarIdsAreRead) {
  TempDir dir("io");
  write_text(dir / "s.mtx", "%%MatrixMarket matrix coordinate integer general\n2 1 1\n2 1 9\n");
  write_text(dir / "s.genes.txt", "ACTB\nGAPDH\n");
  write_text(dir / "s.cells.txt", "AAAC-1\n");
  const auto m = std::get<CountMatrix>(read_matrix(dir / "s.mtx"));
  EXPECT_EQ(m.gene_ids(), (std::vector<std::string>{"ACTB", "GAPDH"}));
  EXPECT_EQ(m.cell_ids(), (std::vector<std::string>{"AAAC-1"}));
}

TEST(MatrixIo, DenseCsvParsesQuotedIds) {
  TempDir dir("io");
  write_text(dir / "m.csv", "gene,\"cell,1\",c2\ng1,0,3\n\"g\"\"2\",4,0\n");
  const auto m = std::get<CountMatrix>(read_matrix(dir / "m.csv"));
  EXPECT_EQ(m.cell_ids()[0], "cell,1");
  EXPECT_EQ(m.gene_ids()[1], "g\"2");
  EXPECT_EQ(m.at(0, 1), 3u);
  EXPECT_EQ(m.at(1, 0), 4u);
  EXPECT_EQ(m.nnz(), 2u);

  write_text(dir / "r.csv", "gene,c1\ng1,0.25\n");
  EXPECT_TRUE(std::holds_alternative<RealMatrix>(read_matrix(dir / "r.csv")));
  write_text(dir / "ragged.csv", "gene,c1,c2\ng1,1\n");
  EXPECT_THROW(read_matrix(dir / "ragged.csv"), ParseError);
}

class RoundTrip : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RoundTrip, CountsBothFormats) {
  TempDir dir("rt");
  const auto m = testing::random_counts(50, 50, 0.1, 1000, GetParam());
  for (auto fmt : {MatrixFormat::MatrixMarket, MatrixFormat::DenseCsv}) {
    const auto path = dir / (fmt == MatrixFormat::DenseCsv ? "m.csv" : "m.mtx");
    write_matrix(m, path, fmt);
    const auto back = std::get<CountMatrix>(read_matrix(path));
    EXPECT_EQ(back, m);
    write_matrix(back, dir / "again.mtx", MatrixFormat::MatrixMarket);
    if (fmt == MatrixFormat::MatrixMarket) EXPECT_EQ(slurp(path), slurp(dir / "again.mtx"));
  }
}

TEST_P(RoundTrip, RealsExact) {
  TempDir dir("rt");
  const auto m = testing::random_reals(50, 50, 0.1, GetParam());
  for (auto fmt : {MatrixFormat::MatrixMarket, MatrixFormat::DenseCsv}) {
    const auto path = dir / (fmt == MatrixFormat::DenseCsv ? "m.csv" : "m.mtx");
    write_matrix(m, path, fmt);
    const auto back = std::get<RealMatrix>(read_matrix(path));
    EXPECT_EQ(back, m);  // shortest round-trip output is exact
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTrip, ::testing::Values(1u, 2u, 3u, 4u, 5u));

TEST(MatrixIo, FormatReal) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(3.0), "3");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(MatrixIo, FormatSelection) {
  EXPECT_EQ(format_from_path("x.csv"), MatrixFormat::DenseCsv);
  EXPECT_EQ(format_from_path("x.mtx"), MatrixFormat::MatrixMarket);
  EXPECT_EQ(parse_format("dense-csv"), MatrixFormat::DenseCsv);
  EXPECT_THROW(parse_format("h5"), DomainError);
}

TEST(Matrix, RejectsInvalidConstruction) {
  EXPECT_THROW(CountMatrix(2, 1, {0, 1}, {0}, {0}, make_ids("G", 2), make_ids("C", 1)),
               DomainError);  // stored zero
  EXPECT_THROW(CountMatrix(2, 1, {0, 2}, {1, 0}, {1, 1}, make_ids("G", 2), make_ids("C", 1)),
               DomainError);  // unsorted rows
  EXPECT_THROW(CountMatrix(2, 1, {0, 0}, {}, {}, {"a", "a"}, make_ids("C", 1)), DomainError);
}

}  // namespace
}  // namespace scbench
