#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

std::string g_cli;

struct RunOutput {
    int exit_code;
    std::string stdout_text;
};

RunOutput run_env(const std::string& env, const std::string& args) {
    std::string cmd = env.empty() ? g_cli + " " + args + " 2>/dev/null"
                                  : env + " " + g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return RunOutput{WEXITSTATUS(status), out};
}

RunOutput run(const std::string& args) { return run_env("", args); }

} // namespace

TEST_CASE("byte-identical output on repeated runs") {
    for (const char* args : {
             "gauss-sum 5 2 --brute",
             "theta --x 0.381966011 --y 0.001",
             "cf 'quad:0,1,(1)' --terms 12",
             "phi --x 0.25 --h 1e-3",
             "expand 1/4 --h 0.001 --K 1",
         }) {
        RunOutput a = run(args);
        RunOutput b = run(args);
        CHECK(a.exit_code == 0);
        CHECK(a.stdout_text == b.stdout_text);
        CHECK(!a.stdout_text.empty());
    }
}

TEST_CASE("every numeric value carries an est_error") {
    RunOutput r = run("theta --x 0.1 --y 0.2");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("est_error") != std::string::npos);
    RunOutput p = run("--tol 1e-7 phi --x 0.3");
    CHECK(p.stdout_text.find("est_error") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("gauss-sum 4 2").exit_code == 2);       // not coprime
    CHECK(run("gauss-sum").exit_code == 2);           // missing args
    CHECK(run("alpha nonsense").exit_code == 2);      // bad x-spec
    CHECK(run("--digits 10 gauss-sum 3 1").exit_code == 2);
    CHECK(run("verify bogus").exit_code == 2);
    CHECK(run("theta --x 0.3 --y -1").exit_code == 2);
}

TEST_CASE("RIEMANN_PRECISION environment override") {
    RunOutput lo = run_env("RIEMANN_PRECISION=10", "gauss-sum 3 1");
    CHECK(lo.exit_code == 2); // below the 17-digit floor
    RunOutput hi = run_env("RIEMANN_PRECISION=25", "gauss-sum 3 1");
    CHECK(hi.exit_code == 0);
}

TEST_CASE("precision shortfall exits with 4") {
    CHECK(run("--digits 20 phi --x 0.3 --h 1e-9 --tol 1e-12").exit_code == 4);
}

TEST_CASE("predicted alpha values through the CLI") {
    RunOutput r = run("alpha 'quad:0,1,(1)' --predict-only");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("7.5000") != std::string::npos);
    RunOutput s = run("alpha rat:1/3 --predict-only");
    CHECK(s.stdout_text.find("5.0000") != std::string::npos);
    RunOutput t = run("alpha rat:1/2 --predict-only");
    CHECK(t.stdout_text.find("rational_differentiable") != std::string::npos);
}

TEST_CASE("gauss-sum brute cross-check agrees") {
    RunOutput r = run("gauss-sum 12 5 --brute");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"cross_check\": \"ok\"") != std::string::npos);
    RunOutput z = run("gauss-sum 2 1 --brute");
    CHECK(z.exit_code == 0);
    CHECK(z.stdout_text.find("\"exact\": \"0\"") != std::string::npos);
}

TEST_CASE("alpha --csv emits the plot grid schema") {
    RunOutput r = run("alpha rat:1/2 --h-min 1e-3 --h-max 1e-2 --samples-per-decade 3 --csv");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.rfind("h,abs_increment,re,im,est_error\n", 0) == 0);
    // sorted by |h| descending: first row is the largest h
    auto first_line_end = r.stdout_text.find('\n');
    auto second_line_end = r.stdout_text.find('\n', first_line_end + 1);
    std::string row = r.stdout_text.substr(first_line_end + 1, second_line_end - first_line_end - 1);
    CHECK(row.substr(0, row.find(',')).find("e-02") != std::string::npos);
    // byte-identical across runs
    RunOutput b = run("alpha rat:1/2 --h-min 1e-3 --h-max 1e-2 --samples-per-decade 3 --csv");
    CHECK(b.stdout_text == r.stdout_text);
}

TEST_CASE("verify contfrac suite is green") {
    RunOutput r = run("verify contfrac");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("FAIL") == std::string::npos);
    CHECK(r.stdout_text.find("PASS") != std::string::npos);
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("-", 0) != 0 && g_cli.empty()) g_cli = a;
    }
    if (g_cli.empty()) g_cli = "./riemannphi";
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
