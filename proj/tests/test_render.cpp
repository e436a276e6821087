#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <sstream>

#include "otkit/render.hpp"
#include "support.hpp"

using otkit::CandidateTree;
using otkit::NodeKind;
using otkit::count_format;
using otkit::paginate;
using otkit::parse_flat;
using otkit::render_tree;
using testsupport::GenericNode;

TEST_CASE("parse_flat is the inverse of flatten", "[render]") {
    const std::vector<std::string> samples{
        "word(ft([])).",
        "s(x({T(A)}),x(T([]))).",
        "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m({Rt(SONORANT,DORSAL)})))).",
    };
    for (const std::string& s : samples) {
        CandidateTree t = parse_flat(s);
        REQUIRE(otkit::flatten_line(t) == s);
    }
}

TEST_CASE("parse_flat reads node kinds", "[render]") {
    CandidateTree t = parse_flat("syl({Rt(X)},m([])).");
    REQUIRE(t.kind == NodeKind::Internal);
    REQUIRE(t.name == "syl");
    REQUIRE(t.children.size() == 2);
    REQUIRE(t.children[0].kind == NodeKind::Underparse);
    REQUIRE(t.children[0].children[0].kind == NodeKind::Internal);
    REQUIRE(t.children[0].children[0].name == "Rt");
    REQUIRE(t.children[0].children[0].children[0].kind == NodeKind::Terminal);
    REQUIRE(t.children[0].children[0].children[0].name == "X");
    REQUIRE(t.children[1].children[0].kind == NodeKind::Empty);
}

TEST_CASE("parse_flat ignores the violation vector", "[render]") {
    CandidateTree t = parse_flat("word(ft([])).''****");
    REQUIRE(otkit::flatten_line(t) == "word(ft([])).");
    REQUIRE(otkit::flatten_line(parse_flat("x.")) == "x.");
}

TEST_CASE("parse_flat rejects malformed candidates with a column", "[render]") {
    REQUIRE_THROWS_WITH(parse_flat("word(ft([]))", 1),
                        "line 1: expected '.' after candidate at column 13");
    REQUIRE_THROWS_WITH(parse_flat("word(ft([]).", 1), "line 1: unbalanced '(' at column 12");
    REQUIRE_THROWS_WITH(parse_flat("{x(y).", 1), "line 1: unbalanced '{' at column 6");
    REQUIRE_THROWS_WITH(parse_flat("a(().", 1), "line 1: expected a node name at column 3");
    REQUIRE_THROWS_WITH(parse_flat("a([x]).", 1), "line 1: expected '[]' at column 3");
    REQUIRE_THROWS_WITH(parse_flat("a(b,).", 1), "line 1: expected a node name at column 5");
    REQUIRE_THROWS_WITH(parse_flat(".", 1), "line 1: expected a node name at column 1");
    REQUIRE_THROWS_WITH(parse_flat("a(b)x.", 1), "line 1: expected '.' after candidate at column 5");
}

TEST_CASE("labels render in lower case, leaves as brackets", "[render]") {
    REQUIRE(render_tree(parse_flat("A.")) == "a\n");
    REQUIRE(render_tree(parse_flat("CORONAL.")) == "coronal\n");
    REQUIRE(render_tree(parse_flat("[].")) == "[]\n");
}

TEST_CASE("a unary chain stacks label, stub, junction, child", "[render]") {
    REQUIRE(render_tree(parse_flat("m(X).")) == "m\n|\n.\n|\nx\n");
    REQUIRE(render_tree(parse_flat("word(ft([])).")) ==
            "word\n"
            " |\n"
            " .\n"
            " |\n"
            " ft\n"
            " |\n"
            " .\n"
            " |\n"
            " []\n");
}

TEST_CASE("siblings sit two columns apart under a dotted run", "[render]") {
    REQUIRE(render_tree(parse_flat("s(a,b).")) ==
            " s\n"
            " |\n"
            ".--.\n"
            "|  |\n"
            "a  b\n");
}

TEST_CASE("rendered structure matches the tree it came from", "[render]") {
    for (const char* flat : {
             "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m(Rt(SONORANT,DORSAL))))).",
             "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m({Rt(SONORANT,DORSAL)})))).",
             "word(ft(syl(Rt([]),m(Rt([]))),syl(m({Rt(SPREAD_GLOTTIS,CORONAL)}))),"
             "ft(syl(m({Rt(SONORANT,DORSAL)})))).",
             "s(x({T(A)}),x(T([]))).",
             "a(b(c,d,e),f(g),[]).",
         }) {
        CandidateTree t = parse_flat(flat);
        GenericNode expected = testsupport::display_shape(t);
        GenericNode extracted = testsupport::tree_from_rendering(render_tree(t));
        REQUIRE(extracted == expected);
    }
}

TEST_CASE("every fourth row carries labels and depth is uniform", "[render]") {
    std::string out = render_tree(parse_flat("word(ft(syl(m(Rt([])),m(Rt(X)))))."));
    std::vector<std::string> rows = testsupport::split_lines(out);
    // depth 5 tree: 4 rows per internal level plus the leaf row
    REQUIRE(rows.size() == 4 * 5 + 1);
    for (std::size_t r = 0; r + 1 < rows.size(); r += 4) {
        for (char c : rows[r])
            REQUIRE((std::islower(static_cast<unsigned char>(c)) || c == ' ' || c == '[' ||
                     c == ']' || c == '{' || c == '}'));
    }
}

TEST_CASE("count_format emits index, candidate and vector", "[render]") {
    std::vector<std::string> out = count_format({
        "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m(Rt(SONORANT,DORSAL))))).''******",
        "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m({Rt(SONORANT,DORSAL)})))).'*'******",
    });
    REQUIRE(out == std::vector<std::string>{
                       "1",
                       "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m(Rt(SONORANT,DORSAL)))))",
                       "''******",
                       "2",
                       "word(ft(syl(Rt(SPREAD_GLOTTIS,CORONAL),m({Rt(SONORANT,DORSAL)}))))",
                       "'*'******",
                   });
    REQUIRE(count_format({}).empty());
    REQUIRE(count_format({"x."}) == std::vector<std::string>{"1", "x", ""});
    REQUIRE_THROWS_WITH(count_format({"x.", "bad"}),
                        "line 2: malformed candidate line (no '.')");
}

namespace {

struct KeyScript {
    std::vector<int> keys;
    std::size_t next = 0;
    int taken() const { return static_cast<int>(next); }
    std::function<int()> fn() {
        return [this]() { return next < keys.size() ? keys[next++] : -1; };
    }
};

std::string paged(const std::string& input, int height, KeyScript& keys) {
    std::istringstream in(input);
    std::ostringstream out;
    paginate(in, out, height, keys.fn());
    return out.str();
}

}  // namespace

TEST_CASE("paginate pauses after each full page", "[render]") {
    std::string ten = "1\n2\n3\n4\n5\n6\n7\n8\n9\n10\n";

    SECTION("space advances page by page") {
        KeyScript keys{{' ', ' '}};
        REQUIRE(paged(ten, 4, keys) == ten);
        REQUIRE(keys.taken() == 2);
    }
    SECTION("q quits after the first page") {
        KeyScript keys{{'q'}};
        REQUIRE(paged(ten, 4, keys) == "1\n2\n3\n4\n");
    }
    SECTION("Q quits too") {
        KeyScript keys{{'Q'}};
        REQUIRE(paged(ten, 4, keys) == "1\n2\n3\n4\n");
    }
    SECTION("end of key input quits") {
        KeyScript keys{{}};
        REQUIRE(paged(ten, 4, keys) == "1\n2\n3\n4\n");
    }
    SECTION("unknown keys are ignored") {
        KeyScript keys{{'z', 'x', ' ', 'q'}};
        REQUIRE(paged(ten, 4, keys) == "1\n2\n3\n4\n5\n6\n7\n8\n");
        REQUIRE(keys.taken() == 4);
    }
    SECTION("no pause after the final line of an exact page") {
        KeyScript keys{{'q'}};
        REQUIRE(paged("1\n2\n3\n4\n", 4, keys) == "1\n2\n3\n4\n");
        REQUIRE(keys.taken() == 0);
    }
    SECTION("a null key source copies everything") {
        std::istringstream in(ten);
        std::ostringstream out;
        paginate(in, out, 4, nullptr);
        REQUIRE(out.str() == ten);
    }
    SECTION("a non-positive height copies everything") {
        KeyScript keys{{'q'}};
        REQUIRE(paged(ten, 0, keys) == ten);
        REQUIRE(keys.taken() == 0);
    }
}
