#include <qha/random.hpp>
#include <qha/text_io.hpp>

#include <gtest/gtest.h>

using namespace qha;

namespace {

const char* kCover = R"(# projective cover P1 -> S1
quiver A2
vertices 1 2
arrow a: 1 -> 2

complex C over A2 field Q window 0 1
degree 0
vertex 1 dim 1
vertex 2 dim 1
map a: 1
degree 1
vertex 1 dim 1
vertex 2 dim 0
map a: -
diff 0:
at 1: 1
at 2: -
)";

std::string expect_error(const std::string& text) {
  try {
    parse_text(text, "in.txt");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(TextIo, ParsesCover) {
  auto ws = parse_text(kCover);
  ASSERT_EQ(ws.complexes.count("C"), 1u);
  const auto& nc = ws.complexes.at("C");
  ComplexOps<Rep1> ops(nc.cat);
  auto h0 = ops.cohomology(*nc.complex, 0).object;
  EXPECT_EQ(nc.cat.dimension_vector(h0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(nc.cat.dim(ops.cohomology(*nc.complex, 1).object), 0u);
}

TEST(TextIo, FieldSpellings) {
  for (std::string f : {"F5", "Fp 5"}) {
    auto ws = parse_text("rep M over A2 field " + f + "\nvertex 1 dim 1\nvertex 2 dim 1\nmap a: 3\n");
    EXPECT_EQ(ws.reps.at("M").cat.field().characteristic(), 5u);
  }
  auto ws = parse_text("rep M over K2 field Q\nvertex 1 dim 1\nvertex 2 dim 1\nmap a: 1\nmap b: 1/2\n");
  EXPECT_EQ(ws.reps.at("M").object.arrow[1].to_string(), "1/2");
}

TEST(TextIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(expect_error("quiver X\nvertices 1\nbogus line\n"),
            "in.txt:3: expected 'vertices v1 v2 ...' or 'arrow <name>: <tail> -> <head>'");
  EXPECT_NE(expect_error("rep M over A2 field Q\nvertex 1 dim 1\nvertex 2 dim 1\nmap a: 1,2\n").find("in.txt:4:"),
            std::string::npos);
  EXPECT_NE(expect_error("rep M over A9x field Q\n").find("unknown quiver"), std::string::npos);
  EXPECT_NE(expect_error("rep M over A2 field F4\n").find("in.txt:1:"), std::string::npos);
  // d o d != 0
  EXPECT_NE(expect_error("complex C over A1 field Q window 0 2\ndegree 0\nvertex 1 dim 1\ndegree 1\nvertex 1 dim 1\n"
                         "degree 2\nvertex 1 dim 1\ndiff 0:\nat 1: 1\ndiff 1:\nat 1: 1\n")
                .find("in.txt:1:"),
            std::string::npos);
  // non-natural morphism
  std::string reps = "rep P over A2 field Q\nvertex 1 dim 1\nvertex 2 dim 1\nmap a: 1\n"
                     "rep S over A2 field Q\nvertex 2 dim 1\n";
  EXPECT_NE(expect_error(reps + "morphism f: P -> S\nat 1: -\nat 2: 1\n").find("naturality"), std::string::npos);
  EXPECT_EQ(expect_error(reps + "rep P over A2 field Q\n"), "in.txt:7: duplicate rep name 'P'");
}

class TextIoRoundTrip : public ::testing::TestWithParam<FieldSpec> {};

TEST_P(TextIoRoundTrip, RandomObjectsSurvive) {
  const FieldSpec f = GetParam();
  auto q = make_quiver("D", {"u", "v", "w"}, {{"x", "u", "v"}, {"y", "u", "w"}, {"z", "v", "w"}});
  Rep1 c(q, FdVect(f));
  ComplexOps<Rep1> ops(c);
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_object(c, rng, 3);
    auto n = random_object(c, rng, 3);
    auto g = random_map(c, m, n, rng);
    std::string text = write_quiver(*q) + write_rep("M", c, m) + write_rep("N", c, n) +
                       write_morphism("g", "M", "N", c, g);
    auto x = std::make_shared<const Complex<Rep1>>(ops.random_complex(rng, -1, 3, 2));
    auto y = std::make_shared<const Complex<Rep1>>(ops.random_complex(rng, -1, 3, 2));
    auto h = ops.random_chain_map(x, y, rng);
    text += write_complex("X", c, *x) + write_complex("Y", c, *y) + write_chainmap("h", "X", "Y", c, h);
    auto roof = identity_roof(ops, x);
    text += write_roof("r", "X", "X", c, roof);

    auto ws = parse_text(text);
    EXPECT_EQ(ws.reps.at("M").object, m);
    EXPECT_EQ(ws.reps.at("N").object, n);
    EXPECT_EQ(ws.morphisms.at("g").map, g);
    EXPECT_EQ(*ws.complexes.at("X").complex, *x);
    EXPECT_EQ(*ws.complexes.at("Y").complex, *y);
    EXPECT_TRUE(ops.equal(ws.chainmaps.at("h").map, h));
    EXPECT_EQ(ws.roofs.at("r").roof.apex(), *x);
    // writing the parsed values again is a fixed point
    const auto& pc = ws.complexes.at("X");
    EXPECT_EQ(write_complex("X", pc.cat, *pc.complex), write_complex("X", c, *x));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, TextIoRoundTrip, ::testing::Values(FieldSpec::rationals(), FieldSpec::prime_field(5)),
                         [](const auto& info) { return info.param.is_prime_field() ? "F5" : "Q"; });
