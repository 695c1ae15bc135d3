#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpw/cli.hpp"

using namespace lpw;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    return {code, o.str(), e.str()};
}

fs::path tmpdir()
{
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / ("lpw_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

Json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return Json::parse(in);
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("construct pruefer")
    {
        const fs::path f = tmpdir() / "u2.json";
        const Run r = run({"construct", "--group", "pruefer:2", "-o", f.string()});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("scale: 1/2") != std::string::npos);
        const Json j = read_json(f);
        CHECK(j["params"]["mass"] == "1/1");
        CHECK(j["scale"] == "1/2");
        CHECK(WeightFn::from_provenance(j).b_certified());
    }

    TEST_CASE("construct rationals and sums record their constants")
    {
        const Run q = run({"construct", "--group", "rationals", "--scale", "none"});
        REQUIRE(q.code == 0);
        const Json jq = Json::parse(q.out);
        CHECK(jq["params"].contains("C"));
        const Run s = run({"construct", "--group", "sum", "--summands", "pruefer:2,pruefer:3,rationals"});
        REQUIRE(s.code == 0);
        const Json js = Json::parse(s.out);
        CHECK(js["params"]["eps1"] == "1/60");
        CHECK(js["params"]["alphas"].size() == 3);
    }

    TEST_CASE("verify exit codes")
    {
        const fs::path f = tmpdir() / "u2v.json";
        REQUIRE(run({"construct", "--group", "pruefer:2", "-o", f.string()}).code == 0);
        const fs::path certs = tmpdir() / "certs.json";
        const Run ok = run({"verify", f.string(), "--window", "G_4", "--trunc", "N=8", "-o", certs.string()});
        CHECK(ok.code == 0);
        CHECK(fs::exists(certs));
        CHECK(read_json(certs).at(0)["verdict"] == "holds");

        const fs::path bad = tmpdir() / "bad.json";
        REQUIRE(run({"construct", "--group", "pruefer:2", "--phi-prefix", "1/8,1/4,3/8", "--phi-tail",
                     "normalized:1/2:1/2", "--allow-nonmonotone", "--scale", "none", "-o", bad.string()})
                    .code == 0);
        const Run fail = run({"verify", bad.string(), "--suite", "b", "--window", "G_3", "--trunc", "N=8",
                              "--bound", "1"});
        CHECK(fail.code == 1);

        const fs::path qf = tmpdir() / "q.json";
        REQUIRE(run({"construct", "--group", "rationals", "--scale", "none", "-o", qf.string()}).code == 0);
        const Run inc = run({"verify", qf.string(), "--suite", "b", "--window", "Q_1:1", "--trunc", "N=3,B=5",
                             "--bound", "87/50"});
        CHECK(inc.code == 3);
    }

    TEST_CASE("domar and beurling")
    {
        const Run d = run({"domar", "--weight", "builtin:exp", "--x", "1", "--N", "3"});
        CHECK(d.code == 0);
        CHECK(d.out.find("3,3/1,11/6") != std::string::npos);
        const Run div = run({"domar", "--weight", "builtin:poly2-exp", "--x", "1", "--N", "10"});
        CHECK(div.code == 0);
        CHECK(div.out.find("classification: Divergent") != std::string::npos);
        const fs::path csv = tmpdir() / "b.csv";
        const Run b = run({"beurling", "--weight", "builtin:poly2", "--csv", csv.string()});
        CHECK(b.code == 0);
        CHECK(b.out.find("classification: finite") != std::string::npos);
        CHECK(fs::file_size(csv) > 0);
    }

    TEST_CASE("countex")
    {
        const Run c = run({"countex", "--depth", "2"});
        CHECK(c.code == 0);
        CHECK(c.out.find("[2, 220]") != std::string::npos);
        CHECK(c.out.find("sum of verified terms >= 1/2") != std::string::npos);
        CHECK(run({"countex", "--depth", "5"}).code == 2);
    }

    TEST_CASE("equivalence")
    {
        const Run e = run({"equivalence", "--w1", "builtin:poly2", "--w2", "builtin:poly2-char", "--window",
                           "grid:-5:5:101"});
        CHECK(e.code == 0);
        CHECK(e.out.find("C1 =") != std::string::npos);
    }

    TEST_CASE("invalid input")
    {
        CHECK(run({"verify", "builtin:nope"}).code == 2);
        CHECK(run({"construct", "--group", "pruefer:4"}).code == 2);
        CHECK(run({"verify", (tmpdir() / "missing.json").string()}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"--version"}).code == 0);
    }

    TEST_CASE("report subset")
    {
        const Run r = run({"report", "--suite", "1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("[PASS] 1") != std::string::npos);
    }
}
