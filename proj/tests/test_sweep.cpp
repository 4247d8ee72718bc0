#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "iqk/sweep.hpp"

using namespace iqk;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/iqk_test_" + name) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("fundamental discriminant range enumeration") {
    // [-50, -3) holds 15 fundamental discriminants (the half-open convention
    // excludes -3 itself)
    auto discs = fundamental_discs_in(Int(-50), Int(-3));
    CHECK(discs.size() == 15);
    CHECK(discs.front() == -4);
    CHECK(discs.back() == -47);
    // ordered by |D| ascending
    for (size_t i = 1; i < discs.size(); ++i) CHECK(discs[i] < discs[i - 1]);
    auto with3 = fundamental_discs_in(Int(-50), Int(-2));
    CHECK(with3.size() == 16);
    CHECK(with3.front() == -3);
    CHECK(fundamental_discs_in(Int(-3), Int(-3)).empty());
}

TEST_CASE("serial and parallel sweeps produce identical rows") {
    auto discs = fundamental_discs_in(Int(-60), Int(0));
    Options opts;
    auto serial = run_sweep_serial(discs, 3, opts);
    auto parallel = run_sweep_parallel(discs, 3, opts, 4);
    CHECK(serial == parallel);
    CHECK(serial.size() == discs.size());
}

TEST_CASE("sweep file is resumable and deterministic across worker counts") {
    Options opts;
    TempFile a("sweep_a.csv"), b("sweep_b.csv"), c("sweep_c.csv");

    sweep_to_file(a.path, Int(-40), Int(0), 3, opts, 1);
    sweep_to_file(b.path, Int(-40), Int(0), 3, opts, 8);
    CHECK(slurp(a.path) == slurp(b.path));

    // partial file: first the small half, then resume over the full range
    sweep_to_file(c.path, Int(-20), Int(0), 3, opts, 1);
    std::string partial = slurp(c.path);
    CHECK(!partial.empty());
    sweep_to_file(c.path, Int(-40), Int(0), 3, opts, 1);
    std::string full = slurp(c.path);
    // previously present rows were kept, not recomputed or duplicated
    CHECK(full.substr(0, partial.size()) == partial);
    // same number of rows as the one-shot run
    auto count_lines = [](const std::string& s) {
        return std::count(s.begin(), s.end(), '\n');
    };
    CHECK(count_lines(full) == count_lines(slurp(a.path)));
}

TEST_CASE("empty range yields a header-only file") {
    Options opts;
    TempFile f("sweep_empty.csv");
    sweep_to_file(f.path, Int(-4), Int(-3), 3, opts, 1);  // no fundamental discs in [-4, -3)
    // -4 is fundamental: range [-4,-3) contains it; use a really empty one
    TempFile g("sweep_empty2.csv");
    sweep_to_file(g.path, Int(-6), Int(-4), 3, opts, 1);  // -5, -6 are not fundamental
    std::string content = slurp(g.path);
    CHECK(content == sweep_csv_header() + "\n");
}

TEST_CASE("csv rows match the header arity") {
    auto discs = fundamental_discs_in(Int(-25), Int(0));
    Options opts;
    auto rows = run_sweep_serial(discs, 3, opts);
    auto count_fields = [](const std::string& line) {
        long n = 1;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') quoted = !quoted;
            if (ch == ',' && !quoted) ++n;
        }
        return n;
    };
    long want = count_fields(sweep_csv_header());
    for (const auto& row : rows) CHECK(count_fields(row) == want);
}
