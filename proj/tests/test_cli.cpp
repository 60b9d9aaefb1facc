#include <gtest/gtest.h>

#include <cstdlib>

#include "mwlab/cli.hpp"
#include "oracles.hpp"

using namespace mwlab;
using namespace mwlab::cli;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"mwlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

void expect_usage_error(const std::vector<std::string>& args, const std::string& flag) {
    try {
        parse_args(args);
        ADD_FAILURE() << "no usage error, expected one naming " << flag;
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find(flag), std::string::npos) << e.what();
    }
}

// reruns the command with --verify v:n for the witness in its report
int verify_rerun(std::vector<std::string> args, const Json& witness) {
    args.push_back("--verify");
    args.push_back(std::to_string(witness["v"].get<u64>()) + ":" + witness["n"].dump());
    return run_cli(args).code;
}

}  // namespace

TEST(ParseArgs, Examples) {
    const auto a = parse_args(words("support-check --xs 2,3 --ys 3,2 --primes 3..1000"));
    EXPECT_EQ(a.command, "support-check");
    EXPECT_EQ(a.xs, (std::vector<std::string>{"2", "3"}));
    EXPECT_EQ(a.ys, (std::vector<std::string>{"3", "2"}));
    EXPECT_EQ(a.scan, PrimeRange(3, 1000));
    EXPECT_EQ(a.backend, "Q");

    const auto d = parse_args({"detect", "--backend", "ec:0,0,1,-1,0", "--points", "(0,0)", "--lambda", "(1,0)",
                               "--primes", "3..500"});
    EXPECT_EQ(d.command, "detect");
    EXPECT_EQ(d.backend, "ec:0,0,1,-1,0");
    EXPECT_EQ(d.points, (std::vector<std::string>{"(0,0)"}));
    EXPECT_EQ(d.lambda, (std::vector<std::string>{"(1,0)"}));
    EXPECT_EQ(d.scan, PrimeRange(3, 500));

    const auto r = parse_args(words("recover --p 2 --q 1024"));
    EXPECT_EQ(r.p, "2");
    EXPECT_EQ(r.q, "1024");
    EXPECT_EQ(r.scan, PrimeRange(3, 10000));
    EXPECT_EQ(r.format, Format::json);
}

TEST(ParseArgs, CanonicalizesAndDefaults) {
    const auto a = parse_args(words("support-check --xs 4/2,-6/4 --ys 1/3 --format csv --workers 3"));
    EXPECT_EQ(a.xs, (std::vector<std::string>{"2", "-3/2"}));
    EXPECT_EQ(a.format, Format::csv);
    EXPECT_EQ(a.workers, 3u);
    EXPECT_EQ(parse_args(words("support-check --xs 2 --ys 3 --backend S={3,2}")).backend, "S={2,3}");
    // curves get the smaller default window
    EXPECT_EQ(parse_args(words("recover --backend ec:0,0,1,-1,0 --p (0,0) --q (1,0)")).scan, PrimeRange(3, 2000));
    const auto v = parse_args(words("cs-check --x 2 --y 3 --verify 7:12"));
    ASSERT_TRUE(v.verify.has_value());
    EXPECT_EQ(v.verify->first, 7u);
    EXPECT_EQ(v.verify->second, 12);
    EXPECT_EQ(parse_args({"detect", "--points", "2", "--lambda", ""}).lambda, std::vector<std::string>{});
    EXPECT_EQ(parse_args(words("support-check --xs 2 --ys 3")), parse_args(words("support-check --ys 3 --xs 2")));
}

TEST(ParseArgs, WorkersFromEnvironment) {
    ::setenv("MWLAB_WORKERS", "5", 1);
    EXPECT_EQ(parse_args(words("recover --p 2 --q 4")).workers, 5u);
    EXPECT_EQ(parse_args(words("recover --p 2 --q 4 --workers 2")).workers, 2u);
    ::unsetenv("MWLAB_WORKERS");
    EXPECT_EQ(parse_args(words("recover --p 2 --q 4")).workers, 1u);
}

TEST(ParseArgs, UsageErrorsNameTheFlag) {
    expect_usage_error(words("recover --p 2 --q 4 --frobnicate 1"), "--frobnicate");
    expect_usage_error(words("support-check --xs 2,x --ys 3"), "--xs");
    expect_usage_error(words("support-check --xs 2 --ys 0"), "--ys");
    expect_usage_error(words("support-check --xs 2 --ys 3 --primes 100..10"), "--primes");
    expect_usage_error(words("support-check --xs 2 --ys 3 --primes 1..10"), "--primes");
    expect_usage_error(words("support-check --xs 2 --ys 3 --primes 3-10"), "--primes");
    expect_usage_error(words("support-check --xs 2"), "--ys");
    expect_usage_error(words("support-check --xs 2 --ys 3 --condition nope"), "--condition");
    expect_usage_error(words("support-check --xs 2 --ys 3 --backend ec:0,0,0,0,0"), "--backend");
    expect_usage_error(words("detect --backend ec:0,0,1,-1,0 --points (1,1) --lambda (0,0)"), "--points");
    expect_usage_error(words("find-primes --points 2,3 --l 4 --ks 1,0"), "--l");
    expect_usage_error(words("find-primes --points 2,3 --l 5 --ks 1"), "--ks");
    expect_usage_error(words("cs-check --x 2,3 --y 5"), "--x");
    expect_usage_error(words("cs-check --x 2 --y 5 --verify 8:1"), "--verify");
    expect_usage_error(words("experiment --suite nope"), "--suite");
    expect_usage_error(words("find-primes --points 2 --l 3 --ks 0 --verify 7:1"), "--verify");
    EXPECT_THROW(parse_args({}), UsageError);
    EXPECT_THROW(parse_args(words("frobnicate")), UsageError);
    EXPECT_THROW(parse_args(words("--help")), HelpRequested);
}

TEST(Run, SpecExamples) {
    const auto a = run_cli(words("support-check --xs 2 --ys 8"));
    EXPECT_EQ(a.code, 1);
    const Json ja = a.json();
    EXPECT_EQ(ja["report"]["verdict"], "violated");
    // independently: the first odd prime where ord(2) and ord(8) differ
    u64 expect = 0;
    for (u64 v : oracle::primes_between(3, 100)) {
        if (oracle::order_by_scan(2, v) != oracle::order_by_scan(8, v)) {
            expect = v;
            break;
        }
    }
    EXPECT_EQ(expect, 7u);
    EXPECT_EQ(ja["report"]["witness"]["v"], expect);

    const auto r = run_cli(words("recover --p 2 --q 1024"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"d\": 10"), std::string::npos);

    const auto s = run_cli(words("support-check --xs 2,3 --ys 2,3"));
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(s.json()["report"]["verdict"], "holds_on_scan");
    EXPECT_EQ(s.json()["conclusion"], "matched");
}

TEST(Run, ExitCodesFollowTheVerdict) {
    EXPECT_EQ(run_cli(words("cs-check --x 2 --y 4")).code, 0);
    EXPECT_EQ(run_cli(words("cs-check --x 4 --y 2")).code, 1);
    EXPECT_EQ(run_cli(words("support-check --xs 2 --ys 1024 --condition thm2")).code, 0);
    EXPECT_EQ(run_cli(words("find-primes --points 2,3 --l 5 --ks 1,0 --primes 3..1000")).code, 0);
    EXPECT_EQ(run_cli(words("find-primes --points 2 --l 2 --ks 12 --primes 3..100")).code, 2);
    EXPECT_EQ(run_cli(words("replay --p 2 --qs 3 --l 5 --primes 3..1000")).code, 1);
    EXPECT_EQ(run_cli(words("replay --p 2 --qs 4 --l 5 --primes 3..1000")).code, 0);
    EXPECT_EQ(run_cli(words("detect --points 360 --lambda 2,3,5")).code, 0);
    EXPECT_EQ(run_cli(words("detect --points 7 --lambda 2,3")).code, 1);
    EXPECT_EQ(run_cli(words("recover --p 2 --q 3")).code, 1);
    EXPECT_EQ(run_cli(words("recover --p 2 --q 1024 --primes 3..5")).code, 2);
    // data error: P of finite order
    const auto t = run_cli(words("recover --p -1 --q 1"));
    EXPECT_EQ(t.code, 65);
    EXPECT_NE(t.err.find("torsion"), std::string::npos);
    EXPECT_EQ(run_cli(words("recover --p 2 --q 4 --bogus")).code, 64);
    EXPECT_EQ(run_cli(words("--help")).code, 0);

    const auto e = run_cli({"detect", "--backend", "ec:0,1,1,-2,0", "--points", "(-1,1)", "--lambda", "(0,0)"});
    EXPECT_EQ(e.code, 1);
    const auto c = run_cli({"detect", "--backend", "ec:0,0,1,-1,0", "--points", "(1,0)", "--lambda", "(0,0)",
                            "--primes", "3..300"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.json()["status"], "certified");
}

TEST(Run, EveryWitnessReverifies) {
    const std::vector<std::vector<std::string>> cases{
        words("support-check --xs 2 --ys 8"),
        words("support-check --xs 2,3 --ys 2,5"),
        words("support-check --xs 6 --ys 2,3 --condition cor22"),
        words("support-check --xs 12 --ys 6 --condition thm2"),
        words("cs-check --x 4 --y 2"),
        words("cs-check --x 3/2 --y 7"),
        words("replay --p 2 --qs 3,5 --l 7"),
        words("detect --points 7 --lambda 2,3"),
        words("detect --points 2 --lambda 4"),
        {"detect", "--backend", "ec:0,1,1,-2,0", "--points", "(-1,1)", "--lambda", "(0,0)", "--primes", "3..500"},
        {"support-check", "--backend", "ec:0,0,1,-1,0", "--xs", "(0,0)", "--ys", "(1,0)", "--primes", "3..500"},
    };
    for (const auto& args : cases) {
        const auto r = run_cli(args);
        ASSERT_EQ(r.code, 1) << r.out << r.err;
        const Json w = r.json()["report"]["witness"];
        ASSERT_TRUE(w.is_object());
        EXPECT_EQ(verify_rerun(args, w), 1) << r.out;
    }
    // a non-witness does not reproduce
    EXPECT_EQ(run_cli(words("support-check --xs 2 --ys 8 --verify 11:5")).code, 0);
    EXPECT_EQ(run_cli(words("support-check --xs 2 --ys 8 --verify 7:3")).code, 0);

    const auto nm = run_cli(words("recover --p 2 --q 3"));
    ASSERT_EQ(nm.code, 1);
    const u64 v = nm.json()["witness_v"].get<u64>();
    EXPECT_EQ(run_cli({"recover", "--p", "2", "--q", "3", "--verify", std::to_string(v) + ":1"}).code, 1);
    EXPECT_EQ(run_cli(words("recover --p 2 --q 1024 --verify 7:1")).code, 0);
}

TEST(Run, Formats) {
    const auto csv = run_cli(words("support-check --xs 2 --ys 8 --format csv"));
    EXPECT_EQ(csv.code, 1);
    std::istringstream lines(csv.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "condition_id,verdict,v,n,detail");
    EXPECT_EQ(row.rfind("erdos_union,violated,7,1,", 0), 0u) << row;

    const auto text = run_cli(words("recover --p 2 --q 1024 --format text"));
    EXPECT_NE(text.out.find("status: found\n"), std::string::npos);
    EXPECT_NE(text.out.find("d: 10\n"), std::string::npos);

    // stdout carries only the report, progress goes to stderr
    const auto j = run_cli(words("recover --p 2 --q 1024"));
    EXPECT_NO_THROW(j.json());
    EXPECT_EQ(j.out.back(), '\n');
    EXPECT_NE(j.err.find("recover"), std::string::npos);
}

TEST(Run, ByteIdenticalAcrossRunsAndWorkers) {
    const std::vector<std::vector<std::string>> cases{
        words("support-check --xs 2,3,5 --ys 2,3,7"),
        words("detect --points 7,11 --lambda 2,3"),
        words("find-primes --points 2,3 --l 3 --ks 1,0 --max-hits 50 --density"),
        words("experiment --suite detect --trials 20 --seed 3"),
        {"detect", "--backend", "ec:0,1,1,-2,0", "--points", "(-1,1)", "--lambda", "(0,0)", "--primes", "3..500"},
    };
    for (const auto& base : cases) {
        auto one = base, eight = base;
        one.insert(one.end(), {"--workers", "1"});
        eight.insert(eight.end(), {"--workers", "8"});
        const auto a = run_cli(one), b = run_cli(one), c = run_cli(eight);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.out, c.out);
        EXPECT_EQ(a.code, c.code);
    }
}

TEST(Experiment, Examples) {
    const auto empty = run_cli(words("experiment --trials 0"));
    EXPECT_EQ(empty.code, 0);
    EXPECT_EQ(empty.json()["cases"], Json::array());
    EXPECT_EQ(empty.json()["agreement"], 0);

    const auto erdos = run_cli(words("experiment --suite erdos --trials 100 --seed 7"));
    EXPECT_EQ(erdos.code, 0);
    EXPECT_EQ(erdos.json()["agreement"], 100);
    EXPECT_EQ(erdos.json()["summary"]["identical_held"], 100);

    const auto detect = run_cli(words("experiment --suite detect --trials 50 --seed 1"));
    EXPECT_EQ(detect.code, 0);
    EXPECT_EQ(detect.json()["summary"]["theorem_forbidden"], 0);
    EXPECT_EQ(detect.json()["agreement"], 50);
    // the planted instances exercise both outcomes
    EXPECT_GT(detect.json()["summary"]["certified"].get<int>(), 0);
    EXPECT_GT(detect.json()["summary"]["hypothesis_violated"].get<int>(), 0);
}

TEST(Experiment, ExitCodeMatchesVerdict) {
    for (const auto& suite : experiment_suites()) {
        for (u64 seed : {1u, 2u}) {
            ExperimentConfig cfg;
            cfg.suite = suite;
            cfg.trials = 15;
            cfg.seed = seed;
            const auto r = run_experiment(cfg);
            const std::string verdict = r.report["verdict"];
            const int expect = verdict == "agree" ? 0 : verdict == "disagree" ? 1 : 2;
            EXPECT_EQ(r.exit_code, expect) << suite;
            EXPECT_EQ(r.report["cases"].size(), 15u);
            EXPECT_EQ(r.report["agreement"].get<std::size_t>() + r.report["disagreements"].get<std::size_t>() +
                          r.report["scan_misses"].get<std::size_t>(),
                      15u);
        }
    }
    // a window too short to separate most pairs turns agreement into misses
    ExperimentConfig tiny;
    tiny.suite = "erdos";
    tiny.trials = 30;
    tiny.seed = 4;
    tiny.scan = PrimeRange(3, 3);
    const auto r = run_experiment(tiny);
    EXPECT_GT(r.report["scan_misses"].get<int>(), 0);
    EXPECT_EQ(r.report["disagreements"], 0);
    EXPECT_EQ(r.exit_code, 2);
}

TEST(Rng, DeterministicAndInRange) {
    Rng a(42), b(42), c(43);
    std::vector<u64> xs, ys, zs;
    for (int i = 0; i < 1000; ++i) {
        xs.push_back(a.below(7));
        ys.push_back(b.below(7));
        zs.push_back(c.below(7));
    }
    EXPECT_EQ(xs, ys);
    EXPECT_NE(xs, zs);
    std::vector<int> counts(7, 0);
    for (u64 x : xs) {
        ASSERT_LT(x, 7u);
        ++counts[x];
    }
    for (int k : counts) EXPECT_GT(k, 100);
    EXPECT_THROW(a.below(0), std::invalid_argument);

    Rng s(9);
    for (int i = 0; i < 200; ++i) {
        const auto t = sample_independent_tuple(s, 3);
        ASSERT_EQ(t.size(), 3u);
        ASSERT_TRUE(multiplicative_independence(t).independent);
        for (const auto& x : t) {
            // one or two primes <= 50, exponents 1..5
            const auto f = factor(x.numerator());
            ASSERT_GE(f.factors.size(), 1u);
            ASSERT_LE(f.factors.size(), 2u);
            for (const auto& pp : f.factors) {
                ASSERT_LE(pp.prime, 50);
                ASSERT_GE(pp.exponent, 1u);
                ASSERT_LE(pp.exponent, 5u);
            }
        }
    }
}
