#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "stsflow/sts.hpp"

using namespace stsflow;

namespace {

std::vector<Triple> fano_triples() {
    return {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
}

// Lines of AG(2,3) on labels 1..9 via points (x,y) -> 1 + x + 3y: three
// points are collinear exactly when they sum to zero coordinatewise.
std::vector<Triple> ag23_triples() {
    std::vector<Triple> out;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) {
            int ax = a % 3, ay = a / 3, bx = b % 3, by = b / 3;
            int cx = (6 - ax - bx) % 3, cy = (6 - ay - by) % 3;
            int c = cx + 3 * cy;
            if (c > b) out.push_back(Triple{a + 1, b + 1, c + 1});
        }
    return out;
}

// Brute-force oracle for the defining property, independent of validate_sts.
bool pair_coverage_oracle(int n, const std::vector<Triple>& blocks) {
    for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            int covered = 0;
            for (const Triple& t : blocks) {
                bool has_p = t[0] == p || t[1] == p || t[2] == p;
                bool has_q = t[0] == q || t[1] == q || t[2] == q;
                if (has_p && has_q) ++covered;
            }
            if (covered != 1) return false;
        }
    return true;
}

std::string data_path(const std::string& name) {
    return std::string(STSFLOW_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("validate_sts accepts the Fano plane and AG(2,3)") {
    SteinerTripleSystem fano = make_sts(7, fano_triples());
    CHECK(fano.block_count() == 7);
    CHECK(pair_coverage_oracle(7, fano.blocks));

    SteinerTripleSystem ag = make_sts(9, ag23_triples());
    CHECK(ag.block_count() == 12);
    CHECK(pair_coverage_oracle(9, ag.blocks));
    CHECK(ag.replication() == 4);
}

TEST_CASE("validate_sts reports defects") {
    auto triples = fano_triples();
    triples[1] = triples[0];  // repeat a block
    ValidationReport rep = validate_sts(7, triples);
    CHECK_FALSE(rep.ok);
    CHECK(!rep.bad_pairs.empty());
    bool doubly_covered = false;
    for (const auto& d : rep.bad_pairs)
        if (d.times == 2) doubly_covered = true;
    CHECK(doubly_covered);
    CHECK(rep.message.find("covered") != std::string::npos);

    ValidationReport bad_order = validate_sts(8, {});
    CHECK_FALSE(bad_order.ok);

    ValidationReport out_of_range = validate_sts(7, {{1, 2, 9}});
    CHECK_FALSE(out_of_range.ok);
}

TEST_CASE("bose produces valid systems") {
    SteinerTripleSystem s9 = bose(3);
    CHECK(s9.n == 9);
    CHECK(s9.block_count() == 12);
    CHECK(pair_coverage_oracle(9, s9.blocks));

    SteinerTripleSystem s51 = bose(17);
    CHECK(s51.n == 51);
    CHECK(s51.block_count() == 425);

    CHECK_THROWS(bose(4));
    CHECK_THROWS(bose(1));
}

TEST_CASE("hamming_sts gives the projective systems") {
    SteinerTripleSystem fano = hamming_sts(3);
    CHECK(fano.n == 7);
    CHECK(fano.blocks == make_sts(7, fano_triples()).blocks);  // unique STS(7)

    SteinerTripleSystem h15 = hamming_sts(4);
    CHECK(h15.n == 15);
    CHECK(h15.block_count() == 35);
    CHECK(binary_rank(h15) == 11);

    SteinerTripleSystem h31 = hamming_sts(5);
    CHECK(h31.n == 31);
    CHECK(h31.block_count() == 155);
    CHECK(pair_coverage_oracle(31, h31.blocks));

    CHECK_THROWS(hamming_sts(2));
}

TEST_CASE("binary rank of projective systems is 2^r - 1 - r") {
    CHECK(binary_rank(hamming_sts(3)) == 4);
    CHECK(binary_rank(hamming_sts(4)) == 11);
    CHECK(binary_rank(hamming_sts(5)) == 26);
}

TEST_CASE("doubling construction") {
    SteinerTripleSystem fano = hamming_sts(3);
    SteinerTripleSystem s15 = assmuss_mattson(fano, tau_constant(fano, 0));
    CHECK(s15.n == 15);
    CHECK(s15.block_count() == 35);  // 4 per base block plus 7 spokes
    CHECK(pair_coverage_oracle(15, s15.blocks));

    SteinerTripleSystem ag = bose(3);
    SteinerTripleSystem s19 = assmuss_mattson(ag, tau_constant(ag, 1));
    CHECK(s19.n == 19);
    CHECK(s19.block_count() == 57);
    CHECK(pair_coverage_oracle(19, s19.blocks));

    // tau domain mismatch
    TauAssignment wrong;
    wrong.tau.assign(3, 0);
    CHECK_THROWS(assmuss_mattson(fano, wrong));
}

TEST_CASE("doubling keeps exactly the tau=0 base blocks inside {1..n}") {
    SteinerTripleSystem base = bose(3);
    TauAssignment tau = tau_seeded(base, 42);
    SteinerTripleSystem doubled = assmuss_mattson(base, tau);
    std::set<Triple> inside;
    for (const Triple& t : doubled.blocks)
        if (t[2] <= base.n) inside.insert(t);
    std::set<Triple> expected;
    for (size_t j = 0; j < base.blocks.size(); ++j)
        if (tau.tau[j] == 0) expected.insert(base.blocks[j]);
    CHECK(inside == expected);
}

TEST_CASE("resolutions") {
    SteinerTripleSystem s9 = bose(3);
    auto res = find_resolution(s9);
    REQUIRE(res.has_value());
    CHECK(res->classes.size() == 4);
    std::set<int> seen;
    for (const auto& cls : res->classes) {
        CHECK(cls.size() == 3);
        std::set<int> pts;
        for (int b : cls)
            for (int p : s9.blocks[b]) pts.insert(p);
        CHECK(pts.size() == 9);  // pairwise disjoint blocks
        for (int b : cls) CHECK(seen.insert(b).second);
    }
    CHECK(seen.size() == 12);  // classes partition the block list

    CHECK_FALSE(find_resolution(hamming_sts(3)).has_value());  // 7 not divisible by 3

    auto kirkman = find_resolution(hamming_sts(4));
    REQUIRE(kirkman.has_value());
    CHECK(kirkman->classes.size() == 7);
}

TEST_CASE("subsystems by closure") {
    SteinerTripleSystem h15 = hamming_sts(4);
    auto subs7 = find_subsystems(h15, 7);
    CHECK(subs7.size() == 15);  // 2^(n - rank) - 1 = 2^4 - 1
    CHECK(static_cast<size_t>((1 << (15 - binary_rank(h15))) - 1) == subs7.size());
    for (const auto& sub : subs7) CHECK(sub.size() == 7);

    SteinerTripleSystem fano = hamming_sts(3);
    auto subs3 = find_subsystems(fano, 3);
    CHECK(subs3.size() == 7);  // each block is a subsystem of order 3
    CHECK_THROWS(find_subsystems(fano, 7));  // order must be below n
}

TEST_CASE("text format round trip") {
    namespace fs = std::filesystem;
    SteinerTripleSystem fano = hamming_sts(3);
    fs::path tmp = fs::temp_directory_path() / "stsflow_fano_roundtrip.txt";
    write_sts(fano, tmp.string());
    SteinerTripleSystem again = read_sts(tmp.string());
    CHECK(again.n == fano.n);
    CHECK(again.blocks == fano.blocks);
    fs::remove(tmp);

    std::istringstream bad_header("7 6\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n");
    CHECK_THROWS(read_sts_stream(bad_header, "bad_header"));

    std::istringstream comments("# a comment\n7 7\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n\n2 5 7\n3 4 7\n3 5 6\n");
    SteinerTripleSystem from_comments = read_sts_stream(comments, "comments");
    CHECK(from_comments.blocks == fano.blocks);

    std::istringstream out_of_range("7 7\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 9\n");
    CHECK_THROWS(read_sts_stream(out_of_range, "range"));
}

TEST_CASE("order 13 catalog fixtures") {
    SteinerTripleSystem a = read_sts(data_path("sts13a.txt"));
    SteinerTripleSystem b = read_sts(data_path("sts13b.txt"));
    CHECK(a.n == 13);
    CHECK(b.n == 13);
    CHECK(a.block_count() == 26);
    CHECK(b.block_count() == 26);
    CHECK(binary_rank(a) == 13);
    CHECK(binary_rank(b) == 13);
    // Quadrilateral counts separate the two isomorphism classes.
    CHECK(count_quadrilaterals(a) == 13);
    CHECK(count_quadrilaterals(b) == 8);
    CHECK(find_subsystems(a, 6).empty());  // 6 is not an admissible order
}

TEST_CASE("quadrilateral switching yields a valid system") {
    SteinerTripleSystem a = read_sts(data_path("sts13a.txt"));
    auto switched = switch_first_quadrilateral(a);
    REQUIRE(switched.has_value());
    CHECK(pair_coverage_oracle(13, switched->blocks));
    CHECK(count_quadrilaterals(*switched) != count_quadrilaterals(a));
}

TEST_CASE("pencils") {
    SteinerTripleSystem s13 = read_sts(data_path("sts13a.txt"));
    auto pencil = point_pencil(s13, 1);
    CHECK(pencil.size() == 6);
    for (int b : pencil) {
        const Triple& t = s13.blocks[b];
        CHECK((t[0] == 1 || t[1] == 1 || t[2] == 1));
    }
}
