#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hecke/io.hpp"

using namespace hecke;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("hecke_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST(ComplexParse, Forms) {
    EXPECT_EQ(parse_complex("2"), cplx(2.0, 0.0));
    EXPECT_EQ(parse_complex("0.5+9.5337i"), cplx(0.5, 9.5337));
    EXPECT_EQ(parse_complex("-1.5e-3-2i"), cplx(-1.5e-3, -2.0));
    EXPECT_EQ(parse_complex("3i"), cplx(0.0, 3.0));
    EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
    EXPECT_EQ(parse_complex("1+i"), cplx(1.0, 1.0));
    EXPECT_EQ(parse_complex(" 0.5 + 2i "), cplx(0.5, 2.0));
    for (const char* bad : {"", "abc", "1+2", "2ii", "1e"}) EXPECT_THROW(parse_complex(bad), DomainError) << bad;
}

TEST(ComplexParse, RoundTripThroughFormat) {
    for (cplx z : {cplx(0.5, 9.533695261319862), cplx(-3.25, -1e-7), cplx(2.0, 0.0)})
        EXPECT_EQ(parse_complex(format_complex(z, 17)), z);
}

TEST(SpectrumCache, WarmEqualsCold) {
    auto dir = scratch("cache");
    bool hit = true;
    auto cold = cached_length_spectrum(4, 6.0, dir.string(), "double", &hit);
    EXPECT_FALSE(hit);
    EXPECT_TRUE(fs::exists(dir / "q4" / "spectrum_L6.jsonl"));
    auto warm = cached_length_spectrum(4, 6.0, dir.string(), "double", &hit);
    EXPECT_TRUE(hit);
    ASSERT_EQ(cold.size(), warm.size());
    for (std::size_t i = 0; i < cold.size(); ++i) {
        EXPECT_EQ(cold[i].word, warm[i].word);
        EXPECT_EQ(cold[i].length, warm[i].length);
        EXPECT_EQ(cold[i].trace, warm[i].trace);
        EXPECT_EQ(cold[i].primitive, warm[i].primitive);
    }
    // the uncached computation serializes to the same values
    auto direct = length_spectrum<double>(4, 6.0);
    ASSERT_EQ(direct.size(), cold.size());
    for (std::size_t i = 0; i < cold.size(); ++i) EXPECT_EQ(direct[i].length, cold[i].length);
    fs::remove_all(dir);
}

TEST(OperatorDump, RoundTrip) {
    auto dir = scratch("dump");
    OperatorSettings set;
    set.M = 8;
    auto om = TransferOperator(5, cplx(0.5, 3.0), set).assemble(Symmetry::plus);
    dump_operator(dir / "op.bin", om);
    json h;
    auto A = load_operator(dir / "op.bin", &h);
    EXPECT_TRUE(A == om.A);
    EXPECT_EQ(h["q"], 5);
    EXPECT_EQ(h["M"], 8);
    EXPECT_EQ(h["mode"], "hurwitz");
    EXPECT_EQ(h["symmetry"], "plus");
    EXPECT_EQ(h["s"][1], 3.0);
    fs::remove_all(dir);
}

TEST(EigenfunctionJson, Structure) {
    auto fe = extract_eigenfunction(3, cplx(0.5, 9.533695261319862), Symmetry::minus, 12);
    auto j = eigenfunction_to_json(fe);
    EXPECT_EQ(j["q"], 3);
    EXPECT_EQ(j["symmetry"], "minus");
    ASSERT_EQ(j["disks"].size(), 1u);
    EXPECT_EQ(j["disks"][0]["component"], "Eq-1");
    EXPECT_EQ(j["disks"][0]["coeffs"].size(), 13u);
    EXPECT_EQ(j["disks"][0]["coeffs"][0][0], 1.0);
}

TEST(Tabulated, CsvAndJson) {
    auto dir = scratch("tab");
    {
        std::ofstream f(dir / "a.csv");
        f << "t,re,im\n1.0,0.5,0.1\n1.5,0.6,0.2\n# comment\n2.0,0.7\n";
    }
    {
        std::ofstream f(dir / "b.json");
        f << R"({"t": [1, 2], "re": [3, 4], "im": [5, 6]})";
    }
    std::vector<double> t;
    std::vector<cplx> v;
    read_tabulated(dir / "a.csv", t, v);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(v[2], cplx(0.7, 0.0));
    read_tabulated(dir / "b.json", t, v);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(v[1], cplx(4.0, 6.0));
    EXPECT_THROW(read_tabulated(dir / "missing.csv", t, v), DomainError);
    fs::remove_all(dir);
}

TEST(ScanOutput, CsvAndZerosJson) {
    SpectralScan sc;
    sc.q = 3;
    sc.M = 24;
    sc.symmetry = Symmetry::minus;
    sc.t_grid = {1.0, 2.0};
    sc.det_values = {cplx(1.0, 0.0), cplx(0.0, 2.0)};
    sc.zeros.push_back({1.5, 1e-12, 1e-11, 1, true, ""});
    auto csv = scan_to_csv(sc);
    EXPECT_EQ(csv.substr(0, 23), "t,re_det,im_det,abs_det");
    auto z = zeros_to_json(sc);
    EXPECT_EQ(z[0]["t"], 1.5);
    EXPECT_EQ(z[0]["symmetry"], "minus");
    EXPECT_EQ(z[0]["M"], 24);
}
