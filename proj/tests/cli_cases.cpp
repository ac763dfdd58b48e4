// End-to-end CLI cases: spawns the packbound binary (path in argv[1]) and
// checks exit codes, output artifacts, and determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

using nlohmann::json;

int g_failures = 0;
std::string g_bin;
std::string g_dir;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "pass" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = g_bin + " " + args + " 2>" + g_dir + "/stderr.txt";
    const int raw = std::system(cmd.c_str());
    if (raw == -1) return -1;
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

json load(const std::string& path) {
    return json::parse(slurp(path));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_cases <path-to-packbound>\n");
        return 1;
    }
    g_bin = argv[1];
    char tmpl[] = "/tmp/packbound_cli_XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::fprintf(stderr, "mkdtemp failed\n");
        return 1;
    }
    g_dir = tmpl;

    // theta on C5.
    write_file(g_dir + "/c5.graph", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    {
        const int code = run("theta " + g_dir + "/c5.graph -o " + g_dir + "/theta.json");
        expect(code == 0, "theta c5.graph exits 0");
        const json j = load(g_dir + "/theta.json");
        expect(std::abs(j.at("value").get<double>() - 2.2360679774997896) <= 1e-5,
               "theta value is sqrt(5) within 1e-5");
        expect(j.at("certificate").at("psd_margin").get<double>() >= -1e-9,
               "certificate psd margin reported");
    }

    // Determinism: identical invocations produce byte-identical artifacts.
    {
        run("theta " + g_dir + "/c5.graph -o " + g_dir + "/t1.json");
        run("theta " + g_dir + "/c5.graph -o " + g_dir + "/t2.json");
        expect(slurp(g_dir + "/t1.json") == slurp(g_dir + "/t2.json"),
               "repeated theta runs are byte-identical");
    }

    // Parse-error paths (exit 2).
    expect(run("theta " + g_dir + "/missing.graph") == 2, "missing graph file exits 2");
    write_file(g_dir + "/loop.graph", "2 1\n1 1\n");
    expect(run("theta " + g_dir + "/loop.graph") == 2, "loop rejection exits 2");
    expect(run("sphere --dim 2 --degree 1") == 2, "DegreeTooSmall maps to exit 2");
    expect(run("theta") == 2, "missing positional argument exits 2");
    expect(run("cayley --n 5 --sigma 1") == 2, "sigma not closed under negation exits 2");

    // cayley: pentagon via the Fourier LP.
    {
        const int code = run("cayley --n 5 --sigma 1,4 -o " + g_dir + "/cayley.json");
        expect(code == 0, "cayley --n 5 --sigma 1,4 exits 0");
        const json j = load(g_dir + "/cayley.json");
        expect(std::abs(j.at("value").get<double>() - 2.2360679774997896) <= 1e-5,
               "cayley value is sqrt(5)");
        expect(j.at("fhat").size() == 5, "fhat has one entry per dual-group element");
    }

    // delsarte.
    {
        const int code =
            run("delsarte --length 5 --distance 5 -o " + g_dir + "/delsarte.json");
        expect(code == 0, "delsarte --length 5 --distance 5 exits 0");
        const json j = load(g_dir + "/delsarte.json");
        expect(std::abs(j.at("value").get<double>() - 2.0) <= 1e-6, "delsarte (5,5) = 2");
    }

    // sphere with certificate emission, then verify it (exit 0).
    {
        const int code = run("sphere --dim 1 --degree 6 --emit-f " + g_dir + "/f.json -o " +
                             g_dir + "/sphere.json");
        expect(code == 0, "sphere --dim 1 --degree 6 exits 0");
        const json j = load(g_dir + "/sphere.json");
        expect(j.at("bound").get<double>() >= 1.0 - 1e-9 && j.at("bound").get<double>() <= 1.05,
               "dim-1 bound is sane");
        const int vcode = run("verify --f " + g_dir + "/f.json -o " + g_dir + "/verify.json");
        expect(vcode == 0, "verify of an emitted certificate exits 0");
        const json vj = load(g_dir + "/verify.json");
        expect(vj.at("certified").get<bool>(), "verify reports certified");
        expect(std::abs(vj.at("bound").get<double>() - j.at("bound").get<double>()) <= 1e-9,
               "verify bound matches the producing run");
    }

    // The documented cyclic example runs clean.
    {
        const int code = run("cayley --n 17 --sigma 1,4,13,16 -o " + g_dir + "/c17.json");
        expect(code == 0, "cayley --n 17 --sigma 1,4,13,16 exits 0");
        const json j = load(g_dir + "/c17.json");
        const double v = j.at("value").get<double>();
        expect(v > 1.0 && v < 17.0, "Z_17 value is strictly between 1 and 17");
    }

    // sphere without --dim or --dims is a parse error.
    expect(run("sphere --degree 5") == 2, "sphere without --dim exits 2");
    expect(run("sphere --table --degree 5") == 2, "table without --dims exits 2");

    // verify of a pure Gaussian fails condition (i): exit 4.
    {
        write_file(g_dir + "/gaussian.json", "{\"n\": 1, \"d\": 0, \"a\": [2.0]}\n");
        expect(run("verify --f " + g_dir + "/gaussian.json --radii 1.0") == 4,
               "pure Gaussian certificate exits 4");
    }

    // monomial basis collapse at dim 8 is an error exit (2 = rejected data or
    // 3/4 = solver/verification failure depending on where it dies).
    {
        const int code = run("sphere --dim 8 --degree 12 --basis monomial");
        expect(code == 2 || code == 3 || code == 4,
               "monomial basis at dim 8, degree 12 fails with a nonzero exit");
    }

    // --dump-sdp artifact re-checks offline.
    {
        const int code = run("theta " + g_dir + "/c5.graph --dump-sdp " + g_dir +
                             "/dump.json -o " + g_dir + "/t3.json");
        expect(code == 0, "theta --dump-sdp exits 0");
        expect(run("recheck " + g_dir + "/dump.json -o " + g_dir + "/recheck.json") == 0,
               "recheck of the dump exits 0");
        const json rj = load(g_dir + "/recheck.json");
        expect(rj.at("ok").get<bool>(), "recheck reports ok");
        // Corrupt the stored primal and recheck again: exit 4.
        json dump = load(g_dir + "/dump.json");
        dump["solution"]["X"][0]["lower"][0] = dump["solution"]["X"][0]["lower"][0].get<double>() + 1.0;
        write_file(g_dir + "/dump_bad.json", dump.dump(2) + "\n");
        expect(run("recheck " + g_dir + "/dump_bad.json") == 4, "corrupted dump exits 4");
    }

    // sphere --dump-sdp pairs the winning problem with its solution.
    {
        const int code = run("sphere --dim 3 --degree 6 --dump-sdp " + g_dir +
                             "/sphere_dump.json -o " + g_dir + "/s3.json");
        expect(code == 0, "sphere --dump-sdp exits 0");
        expect(run("recheck " + g_dir + "/sphere_dump.json") == 0,
               "recheck of the sphere dump exits 0");
    }

    // Sweep table: CSV with one row per dimension, sorted.
    {
        const int code = run("sphere --table --dims 3,1,2 --degree 5 -o " + g_dir +
                             "/table.csv");
        expect(code == 0, "sphere --table exits 0");
        const std::string csv = slurp(g_dir + "/table.csv");
        expect(csv.rfind("dim,degree,bound\r\n", 0) == 0, "table has the CSV header");
        int rows = 0;
        for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2)
            ++rows;
        expect(rows == 4, "table has header + 3 data rows");
        expect(csv.find("\n1,5,") != std::string::npos &&
               csv.find("\n2,5,") != std::string::npos &&
               csv.find("\n3,5,") != std::string::npos,
               "rows are sorted by dimension");
    }

    // Full 1..8 sweep: 8 data rows sorted by dimension.
    {
        const int code =
            run("sphere --table --dims 1-8 --degree 6 -o " + g_dir + "/sweep.csv");
        expect(code == 0, "sphere --table --dims 1-8 exits 0");
        const std::string csv = slurp(g_dir + "/sweep.csv");
        int rows = 0;
        for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2)
            ++rows;
        expect(rows == 9, "sweep has header + 8 data rows");
        std::size_t prev = 0;
        bool sorted = true;
        for (int dim = 1; dim <= 8; ++dim) {
            const auto at = csv.find("\n" + std::to_string(dim) + ",6,");
            if (at == std::string::npos || at < prev) sorted = false;
            prev = at;
        }
        expect(sorted, "sweep rows are sorted by dimension");
    }

    // Sweep parallelism cap: identical output regardless of PACKBOUND_THREADS.
    {
        const std::string base = slurp(g_dir + "/table.csv");
        const int code = run("sphere --table --dims 3,1,2 --degree 5 -o " + g_dir +
                             "/table2.csv");
        expect(code == 0, "table rerun exits 0");
        setenv("PACKBOUND_THREADS", "1", 1);
        const int code1 = run("sphere --table --dims 3,1,2 --degree 5 -o " + g_dir +
                              "/table3.csv");
        unsetenv("PACKBOUND_THREADS");
        expect(code1 == 0, "single-threaded sweep exits 0");
        expect(slurp(g_dir + "/table2.csv") == base && slurp(g_dir + "/table3.csv") == base,
               "sweep output is deterministic across thread counts");
    }

    // Config file + flag override.
    {
        write_file(g_dir + "/conf.txt", "gap_tol = 1e-9\nformat = csv\n");
        const int code = run("--config " + g_dir + "/conf.txt theta " + g_dir +
                             "/c5.graph -o " + g_dir + "/theta.csv");
        expect(code == 0, "config-driven run exits 0");
        const std::string csv = slurp(g_dir + "/theta.csv");
        expect(csv.rfind("value\r\n2.236067", 0) == 0, "config format=csv produces CSV");
        expect(run("--config " + g_dir + "/missing.conf theta " + g_dir + "/c5.graph") == 2,
               "missing config exits 2");
    }

    std::printf("%s: %d case(s) failed\n", g_failures == 0 ? "SUCCESS" : "FAILURE", g_failures);
    return g_failures;
}
