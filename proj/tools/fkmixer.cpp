// fkmixer: experiment runner for the random-cluster / Potts simulation
// library. Every run writes its outputs plus a manifest.json with the
// resolved parameters, master seed, and SHA-256 digests of the outputs;
// --replay manifest.json re-executes the run and reproduces byte-identical
// CSVs. Exit codes: 0 success, 2 invalid arguments, 3 validation failure.

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fkmix/connectivity.hpp"
#include "fkmix/degree_sequence.hpp"
#include "fkmix/diagnostics.hpp"
#include "fkmix/dynamics.hpp"
#include "fkmix/errors.hpp"
#include "fkmix/fit.hpp"
#include "fkmix/generate.hpp"
#include "fkmix/multigraph.hpp"
#include "fkmix/partition.hpp"
#include "fkmix/rc.hpp"
#include "fkmix/rng.hpp"
#include "fkmix/structure.hpp"
#include "fkmix/thresholds.hpp"
#include "fkmix/union_find.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace fkmix;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// small utilities

std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        char h[3];
        std::snprintf(h, sizeof h, "%02x", md[i]);
        hex += h;
    }
    return hex;
}

int default_threads() {
    if (const char* env = std::getenv("FKMIXER_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Replica-level worker pool; results must be stored by index by fn.
void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, jobs));
    if (threads == 1) {
        for (int j = 0; j < jobs; ++j) fn(j);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) fn(j);
        });
    }
    for (auto& th : pool) th.join();
}

// Scatter + line plot with the data table embedded in an SVG comment.
std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& csv) {
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
    for (double x : xs) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    for (double y : ys) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"monospace\" font-size=\"12\">\n";
    s << "<!-- data table\n" << csv << "-->\n";
    s << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = xmin + (xmax - xmin) * i / 4;
        const double y = ymin + (ymax - ymin) * i / 4;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%.4g", x);
        std::snprintf(by, sizeof by, "%.4g", y);
        s << "<text x=\"" << X(x) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">" << bx
          << "</text>\n";
        s << "<text x=\"" << ml - 8 << "\" y=\"" << Y(y) + 4 << "\" text-anchor=\"end\">" << by
          << "</text>\n";
    }
    s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    s << "<text x=\"16\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" transform=\""
      << "rotate(-90 16 " << (mt + H - mb) / 2 << ")\">" << ylabel << "</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) s << X(xs[i]) << "," << Y(ys[i]) << " ";
    s << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        s << "<circle cx=\"" << X(xs[i]) << "\" cy=\"" << Y(ys[i])
          << "\" r=\"3\" fill=\"firebrick\"/>\n";
    s << "</svg>\n";
    return s.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// shared parameter resolution

double resolve_p(const json& P) {
    if (P.contains("p_frac") && !P["p_frac"].is_null())
        return P["p_frac"].get<double>() * p_u(P["q"].get<double>(), P["gamma"].get<double>());
    return P["p"].get<double>();
}

MultiGraph build_graph(const json& P, std::uint64_t seed) {
    const std::string family = P.value("family", "er");
    if (family == "file") return read_edge_list_file(P["graph"].get<std::string>());
    const int n = P["n"].get<int>();
    if (family == "er") return sample_er_poisson_cloning(n, P["lambda"].get<double>(), seed);
    if (family == "regular") {
        const DegreeSequence dn(std::vector<int>(n, P["degree"].get<int>()));
        return sample_configuration_model(dn, seed);
    }
    if (family == "regular-simple") {
        const DegreeSequence dn(std::vector<int>(n, P["degree"].get<int>()));
        return sample_simple_graph(dn, seed, 1000);
    }
    throw InvalidInput("unknown graph family: " + family);
}

MultiGraph build_graph(const json& P, std::uint64_t seed, int n_override) {
    json Q = P;
    Q["n"] = n_override;
    return build_graph(Q, seed);
}

BoundaryPartition build_bc(const json& P, const MultiGraph& g) {
    const std::string bc = P.value("bc", "free");
    if (bc == "free") return BoundaryPartition(g.n());
    if (bc == "wired-pair") return BoundaryPartition::wired(g.n(), {0, g.n() - 1});
    if (bc == "wired-all") {
        std::vector<int> all(g.n());
        for (int v = 0; v < g.n(); ++v) all[v] = v;
        return BoundaryPartition::wired(g.n(), all);
    }
    throw InvalidInput("unknown bc: " + bc);
}

// ---------------------------------------------------------------------------
// subcommand runners; each returns the list of files written (relative to out)

using Runner = std::function<std::vector<std::string>(const json&, const std::string&)>;

std::vector<std::string> run_threshold(const json& P, const std::string& out) {
    std::ostringstream csv;
    csv << "q,gamma,p_u,beta_u,phat_at_pu\n";
    for (double q : P["q_list"].get<std::vector<double>>()) {
        for (double gamma : P["gamma_list"].get<std::vector<double>>()) {
            const double pu = p_u(q, gamma);
            char line[160];
            std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g,%.10g\n", q, gamma, pu,
                          beta_u(q, gamma), RcParams(pu, q).phat);
            csv << line;
        }
    }
    write_text(out + "/threshold.csv", csv.str());
    return {"threshold.csv"};
}

std::vector<std::string> run_gen_graph(const json& P, const std::string& out) {
    const auto g = build_graph(P, P["seed"].get<std::uint64_t>());
    write_edge_list_file(out + "/graph.edges", g);
    const auto tl = is_LR_treelike(g, P.value("treelike_L", 1), P.value("treelike_R", 2));
    std::ostringstream csv;
    csv << "n,m,max_degree,treelike_ok,max_excess\n";
    int dmax = 0;
    for (int v = 0; v < g.n(); ++v) dmax = std::max(dmax, g.degree(v));
    csv << g.n() << "," << g.m() << "," << dmax << "," << (tl.ok ? 1 : 0) << "," << tl.max_excess
        << "\n";
    write_text(out + "/graph_summary.csv", csv.str());
    return {"graph.edges", "graph_summary.csv"};
}

std::vector<std::string> run_sample_rc(const json& P, const std::string& out) {
    const std::uint64_t seed = P["seed"].get<std::uint64_t>();
    Rng master(seed);
    const auto g = build_graph(P, master.stream(0).next_u64());
    const auto bc = build_bc(P, g);
    const RcParams params(resolve_p(P), P["q"].get<double>());
    const double t = P["t"].get<double>();
    const int samples = P["samples"].get<int>();

    std::vector<std::string> files;
    std::ostringstream csv;
    csv << "sample,open_edges,components,max_cluster\n";
    Rng rng = master.stream(1);
    FkChain chain(g, bc, params, RcConfiguration(g.m(), 0));
    chain.run_continuous(P.value("burn_t", 100.0), rng);
    for (int s = 0; s < samples; ++s) {
        chain.run_continuous(t, rng);
        int open = 0;
        UnionFind uf(g.n());
        for (int e = 0; e < g.m(); ++e)
            if (chain.config()[e]) {
                ++open;
                uf.unite(g.edge(e).first, g.edge(e).second);
            }
        std::vector<int> csize(g.n(), 0);
        int max_cluster = 0;
        for (int v = 0; v < g.n(); ++v) max_cluster = std::max(max_cluster, ++csize[uf.find(v)]);
        csv << s << "," << open << "," << component_count(g, bc, chain.config()) << ","
            << max_cluster << "\n";
    }
    write_text(out + "/rc_samples.csv", csv.str());
    files.push_back("rc_samples.csv");

    if (P.value("exact_dump", false)) {
        if (g.m() > ExactRcDistribution::kMaxEdges)
            throw TooLarge("exact dump needs <= 22 edges");
        const ExactRcDistribution dist(g, bc, params);
        std::ostringstream ex;
        ex << "config_bitmask,log_weight,probability\n";
        for (std::uint32_t mask = 0; mask < (1u << g.m()); ++mask) {
            char line[96];
            std::snprintf(line, sizeof line, "%u,%.12g,%.12g\n", mask, dist.log_weight(mask),
                          dist.probability(mask));
            ex << line;
        }
        write_text(out + "/rc_exact.csv", ex.str());
        files.push_back("rc_exact.csv");
    }
    return files;
}

std::vector<std::string> run_sample_potts(const json& P, const std::string& out) {
    const std::uint64_t seed = P["seed"].get<std::uint64_t>();
    Rng master(seed);
    const auto g = build_graph(P, master.stream(0).next_u64());
    const int q = P["q"].get<int>();
    const double beta = P.contains("beta") && !P["beta"].is_null()
                            ? P["beta"].get<double>()
                            : -std::log1p(-resolve_p(P));
    const int samples = P["samples"].get<int>();
    const int gap_sweeps = P.value("gap_sweeps", 2);
    Rng rng = master.stream(1);
    PottsConfiguration init(g.n());
    for (auto& x : init) x = static_cast<int>(rng.uniform_int(q));
    PottsChain chain(g, beta, q, init);
    chain.run_discrete(static_cast<std::int64_t>(P.value("burn_sweeps", 200)) * g.n(), rng);
    std::ostringstream csv;
    csv << "sample,disagreements,majority_fraction\n";
    for (int s = 0; s < samples; ++s) {
        chain.run_discrete(static_cast<std::int64_t>(gap_sweeps) * g.n(), rng);
        std::vector<int> counts(q, 0);
        for (int v = 0; v < g.n(); ++v) ++counts[chain.config()[v]];
        char line[96];
        std::snprintf(line, sizeof line, "%d,%d,%.6f\n", s,
                      disagreement_count(g, chain.config()),
                      static_cast<double>(*std::max_element(counts.begin(), counts.end())) /
                          g.n());
        csv << line;
    }
    write_text(out + "/potts_samples.csv", csv.str());
    return {"potts_samples.csv"};
}

std::vector<std::string> run_couple(const json& P, const std::string& out) {
    const RcParams params(resolve_p(P), P["q"].get<double>());
    const std::uint64_t seed = P["seed"].get<std::uint64_t>();
    const int seeds = P["seeds"].get<int>();
    const double t_max = P.value("t_max", 400.0);
    const int threads = P["threads"].get<int>();
    Rng master(seed);
    std::ostringstream csv;
    csv << "n,median_coupling_time,iqr\n";
    std::vector<double> xs, ys;
    for (int n : P["ns"].get<std::vector<int>>()) {
        std::vector<double> times(seeds);
        parallel_for(seeds, threads, [&](int s) {
            const auto g =
                build_graph(P, Rng(seed).stream(static_cast<std::uint64_t>(n), 2 * s).next_u64(),
                            n);
            const auto r = couple_extremes(
                g, BoundaryPartition(g.n()), params,
                Rng(seed).stream(static_cast<std::uint64_t>(n), 2 * s + 1).next_u64(), t_max);
            times[s] = r.time;
        });
        std::vector<double> sorted = times;
        std::sort(sorted.begin(), sorted.end());
        const double med = median(times);
        const double iqr = sorted[(3 * seeds) / 4] - sorted[seeds / 4];
        char line[96];
        std::snprintf(line, sizeof line, "%d,%.6f,%.6f\n", n, med, iqr);
        csv << line;
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(med);
    }
    write_text(out + "/couple.csv", csv.str());
    write_text(out + "/couple.svg",
               svg_plot("median coupling time vs log n", "log n", "median coupling time", xs, ys,
                        csv.str()));
    return {"couple.csv", "couple.svg"};
}

std::vector<std::string> run_shatter(const json& P, const std::string& out) {
    const RcParams params(resolve_p(P), P["q"].get<double>());
    const std::uint64_t seed = P["seed"].get<std::uint64_t>();
    const int seeds = P["seeds"].get<int>();
    const double t = P["t"].get<double>();
    const int K = P.value("K", 8);
    const int threads = P["threads"].get<int>();
    std::vector<int> max_cluster(seeds), sparse_ok(seeds);
    std::vector<std::vector<int>> size_hists(seeds);
    const int R = P.contains("R") && !P["R"].is_null()
                      ? P["R"].get<int>()
                      : static_cast<int>(std::floor(
                            0.3 * std::log2(static_cast<double>(P["n"].get<int>()))));
    parallel_for(seeds, threads, [&](int s) {
        const auto g = build_graph(P, Rng(seed).stream(2 * s).next_u64());
        const auto rep =
            shatter_stats(g, params, t, 1, Rng(seed).stream(2 * s + 1).next_u64());
        max_cluster[s] = rep.max_cluster[0];
        size_hists[s] = rep.component_sizes[0];
        const auto configs =
            shatter_configs(g, params, t, 1, Rng(seed).stream(2 * s + 1).next_u64());
        sparse_ok[s] = kr_sparse_check(g, configs[0], K, R).ok ? 1 : 0;
    });
    std::ostringstream csv;
    csv << "seed,max_cluster,kr_sparse_ok\n";
    for (int s = 0; s < seeds; ++s)
        csv << s << "," << max_cluster[s] << "," << sparse_ok[s] << "\n";
    write_text(out + "/shatter.csv", csv.str());
    // aggregated size histogram
    std::map<int, long long> hist;
    for (const auto& sizes : size_hists)
        for (int sz : sizes) ++hist[sz];
    std::ostringstream hcsv;
    hcsv << "component_size,count\n";
    std::vector<double> xs, ys;
    for (const auto& [sz, cnt] : hist) {
        hcsv << sz << "," << cnt << "\n";
        xs.push_back(std::log(static_cast<double>(sz)));
        ys.push_back(std::log(static_cast<double>(cnt)));
    }
    write_text(out + "/shatter_hist.csv", hcsv.str());
    write_text(out + "/shatter_hist.svg",
               svg_plot("component size histogram (log-log)", "log size", "log count", xs, ys,
                        hcsv.str()));
    return {"shatter.csv", "shatter_hist.csv", "shatter_hist.svg"};
}

std::vector<std::string> run_tree_decay(const json& P, const std::string& out) {
    const RcParams params(resolve_p(P), P["q"].get<double>());
    const int arity = P["arity"].get<int>();
    const int h_min = P.value("h_min", 2), h_max = P.value("h_max", 14);
    std::ostringstream csv;
    csv << "h,phi\n";
    std::vector<std::pair<int, double>> pts;
    std::vector<double> xs, ys;
    for (int h = h_min; h <= h_max; ++h) {
        const double phi = tree_phi_regular(arity, h, params);
        char line[64];
        std::snprintf(line, sizeof line, "%d,%.12g\n", h, phi);
        csv << line;
        pts.emplace_back(h, phi);
        xs.push_back(h);
        ys.push_back(std::log(phi));
    }
    const double theta = decay_fit(pts);
    csv << "# fitted theta," << theta << "\n";
    write_text(out + "/tree_decay.csv", csv.str());
    write_text(out + "/tree_decay.svg",
               svg_plot("log phi vs height", "height", "log phi", xs, ys, csv.str()));
    return {"tree_decay.csv", "tree_decay.svg"};
}

std::vector<std::string> run_influence(const json& P, const std::string& out) {
    const RcParams params(resolve_p(P), P["q"].get<double>());
    const int arity = P.value("arity", 2);
    const int r_max = P.value("r_max", 3);
    std::ostringstream csv;
    csv << "R,max_tv\n";
    std::vector<double> xs, ys;
    for (int R = 1; R <= r_max; ++R) {
        const auto t = regular_tree(arity, R);
        const auto g = t.to_graph();
        const auto leaves = t.boundary();
        const double tv = influence_tv(g, BoundaryPartition::wired(g.n(), leaves),
                                       BoundaryPartition(g.n()), params, t.root());
        char line[64];
        std::snprintf(line, sizeof line, "%d,%.12g\n", R, tv);
        csv << line;
        xs.push_back(R);
        ys.push_back(tv);
    }
    write_text(out + "/influence.csv", csv.str());
    write_text(out + "/influence.svg",
               svg_plot("wired-vs-free influence", "R", "max TV", xs, ys, csv.str()));
    return {"influence.csv", "influence.svg"};
}

std::vector<std::string> run_potts_bottleneck(const json& P, const std::string& out) {
    const int q = P["q"].get<int>();
    const double beta = P.contains("beta") && !P["beta"].is_null()
                            ? P["beta"].get<double>()
                            : P["beta_frac"].get<double>() *
                                  beta_u(q, P["gamma"].get<double>());
    const double eps = P["eps"].get<double>();
    const int n = P["n"].get<int>();
    const int seeds = P["seeds"].get<int>();
    const std::int64_t cap = P.value("step_cap", std::int64_t{20000000});
    const std::uint64_t seed = P["seed"].get<std::uint64_t>();
    const int threads = P["threads"].get<int>();
    const auto dstars = P["dstars"].get<std::vector<int>>();
    std::vector<double> med(dstars.size());
    std::vector<int> censored(dstars.size());
    parallel_for(static_cast<int>(dstars.size()), threads, [&](int i) {
        const int dstar = dstars[i];
        std::vector<int> deg(n, 3);
        deg[0] = dstar;
        if ((3 * (n - 1) + dstar) % 2 != 0) deg[1] = 4;  // even degree sum
        const auto g = sample_configuration_model(
            DegreeSequence(deg), Rng(seed).stream(static_cast<std::uint64_t>(dstar), 0).next_u64());
        const auto rep =
            bottleneck_escape(g, beta, q, 0, eps, seeds, cap,
                              Rng(seed).stream(static_cast<std::uint64_t>(dstar), 1).next_u64());
        med[i] = rep.median_sweeps(n);
        for (const auto& s : rep.samples) censored[i] += s.censored ? 1 : 0;
    });
    std::ostringstream csv;
    csv << "dstar,median_sweeps,censored\n";
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < dstars.size(); ++i) {
        char line[96];
        std::snprintf(line, sizeof line, "%d,%.6f,%d\n", dstars[i], med[i], censored[i]);
        csv << line;
        xs.push_back(dstars[i]);
        ys.push_back(std::log(med[i]));
    }
    write_text(out + "/bottleneck.csv", csv.str());
    write_text(out + "/bottleneck.svg",
               svg_plot("log median escape sweeps vs planted degree", "d*", "log median sweeps",
                        xs, ys, csv.str()));
    return {"bottleneck.csv", "bottleneck.svg"};
}

// exact-oracle property suite; returns number of failures
int run_small_oracles() {
    int failures = 0;
    const auto expect = [&](bool cond, const char* what) {
        if (!cond) {
            ++failures;
            std::fprintf(stderr, "validate: FAIL %s\n", what);
        } else {
            std::printf("validate: ok %s\n", what);
        }
    };
    {
        MultiGraph g(2);
        g.add_edge(0, 1);
        const ExactRcDistribution d(g, BoundaryPartition(2), RcParams(0.5, 2.0));
        expect(std::abs(d.edge_marginal(0) - 1.0 / 3) < 1e-12, "single-edge marginal = phat");
    }
    {
        MultiGraph g(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        const ExactRcDistribution d(g, BoundaryPartition(3), RcParams(0.5, 2.0));
        expect(std::abs(d.pair_connectivity(0, 2) - 1.0 / 9) < 1e-12,
               "path-3 end-to-end connectivity = 1/9");
    }
    expect(std::abs(p_u(1.0, 2.0) - 0.5) < 1e-9 && std::abs(p_u(2.0, 2.0) - 2.0 / 3) < 1e-9,
           "p_u fixed points");
    {
        TreeSpec t;
        t.parent = {-1, 0, 1};
        t.height = 2;
        expect(std::abs(tree_phi(t, RcParams(0.5, 2.0)) - 1.0 / 9) < 1e-12, "tree_phi path = 1/9");
    }
    {
        Rng rng(12);
        MultiGraph g(4);
        for (int e = 0; e < 5; ++e)
            g.add_edge(static_cast<int>(rng.uniform_int(4)), static_cast<int>(rng.uniform_int(4)));
        const ExactRcDistribution rc(g, BoundaryPartition(4), RcParams(0.4, 3.0));
        const ExactPottsDistribution potts(g, -std::log1p(-0.4), 3);
        expect(total_variation(es_pushforward(rc, 3), potts.probabilities()) < 1e-10,
               "Edwards-Sokal pushforward");
    }
    {
        Rng rng(34);
        MultiGraph g(40);
        for (int e = 0; e < 120; ++e)
            g.add_edge(static_cast<int>(rng.uniform_int(40)),
                       static_cast<int>(rng.uniform_int(40)));
        RcConfiguration init(120, 0);
        auto ref = make_naive_oracle(g, BoundaryPartition(40), init);
        auto dut = make_hdt_oracle(g, BoundaryPartition(40), init);
        bool agree = true;
        for (int op = 0; op < 5000; ++op) {
            const int e = static_cast<int>(rng.uniform_int(120));
            const bool open = rng.uniform() < 0.5;
            dut->set_edge(e, open);
            ref->set_edge(e, open);
            agree = agree && dut->component_count() == ref->component_count() &&
                    dut->is_cut_edge(e) == ref->is_cut_edge(e);
        }
        expect(agree, "connectivity backends agree on 5000 toggles");
    }
    {
        MultiGraph g(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        const auto phi = BoundaryPartition::wired(4, {0, 3});
        const BoundaryPartition psi(4);
        const int D = partition_distance(phi, psi);
        const ExactRcDistribution a(g, phi, RcParams(0.5, 2.0));
        const ExactRcDistribution b(g, psi, RcParams(0.5, 2.0));
        bool ok = true;
        for (std::uint32_t mask = 0; mask < 8u; ++mask) {
            const double r = a.probability(mask) / b.probability(mask);
            ok = ok && r >= std::pow(2.0, -2 * D) - 1e-12 && r <= std::pow(2.0, 2 * D) + 1e-12;
        }
        expect(ok, "boundary perturbation bound on a path");
    }
    return failures;
}

}  // namespace

// Flat key=value config files mirror the flag names of whichever subcommand
// was invoked, so bare keys are routed to the parsed subcommand. CLI11 only
// processes the root app's config, and its stock formatter would require a
// [subcommand] section for that.
struct FlatConfig : CLI::ConfigBase {
    const CLI::App* root = nullptr;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        auto items = CLI::ConfigBase::from_config(input);
        std::vector<std::string> parents;
        if (root != nullptr) {
            const auto subs = root->get_subcommands();
            if (!subs.empty()) parents.push_back(subs.front()->get_name());
        }
        for (auto& item : items)
            if (item.parents.empty() && item.name != "out" && item.name != "threads")
                item.parents = parents;
        return items;
    }
};

int main(int argc, char** argv) {
    CLI::App app{"random-cluster / Potts simulation experiments"};
    app.set_config("--config", "", "flat key=value config file (flags take precedence)");
    {
        auto fmt = std::make_shared<FlatConfig>();
        fmt->root = &app;
        app.config_formatter(fmt);
    }
    std::string out_dir = ".";
    std::string replay_path;
    int threads = default_threads();
    std::uint64_t seed = 1;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--replay", replay_path, "re-run from a manifest.json");
    app.add_option("--threads", threads, "worker pool size (default FKMIXER_THREADS)");

    // shared option targets
    double q = 2.0, gamma = 2.0, p = 0.5, p_frac = -1.0, lambda = 2.0, t = 1.0, t_max = 400.0,
           eps = 0.25, beta = -1.0, beta_frac = 0.8;
    int n = 1024, degree = 3, samples = 100, seeds_n = 32, K = 8, R = -1, arity = 2, h_min = 2,
        h_max = 14, r_max = 3, qi = 2, gap_sweeps = 2, burn_sweeps = 200;
    std::int64_t step_cap = 20000000;
    double burn_t = 100.0;
    bool exact_dump = false;
    std::string family = "er", graph_file, bc = "free", suite = "small-oracles";
    std::vector<double> q_list{2.0}, gamma_list{2.0};
    std::vector<int> ns{512, 1024, 2048}, dstars{8, 12, 16, 20, 24};

    const auto add_common = [&](CLI::App* sub, bool with_p) {
        sub->add_option("--seed", seed, "master seed");
        if (with_p) {
            sub->add_option("--q", q, "cluster weight q");
            sub->add_option("--gamma", gamma, "branching parameter for --p-frac");
            sub->add_option("--p", p, "edge probability");
            sub->add_option("--p-frac", p_frac, "set p = frac * p_u(q, gamma)");
        }
    };
    const auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", family, "er | regular | regular-simple | file");
        sub->add_option("--n", n, "vertex count");
        sub->add_option("--lambda", lambda, "ER mean degree");
        sub->add_option("--degree", degree, "regular degree");
        sub->add_option("--graph", graph_file, "edge-list file for --family file");
    };

    auto* sc_threshold = app.add_subcommand("threshold", "p_u / beta_u table");
    sc_threshold->add_option("--q", q_list, "q values")->delimiter(',');
    sc_threshold->add_option("--gamma", gamma_list, "gamma values")->delimiter(',');

    auto* sc_gen = app.add_subcommand("gen-graph", "sample a random graph");
    add_family(sc_gen);
    sc_gen->add_option("--seed", seed, "master seed");

    auto* sc_rc = app.add_subcommand("sample-rc", "FK Glauber samples");
    add_common(sc_rc, true);
    add_family(sc_rc);
    sc_rc->add_option("--bc", bc, "free | wired-pair | wired-all");
    sc_rc->add_option("--t", t, "continuous time between samples");
    sc_rc->add_option("--burn-t", burn_t, "burn-in time");
    sc_rc->add_option("--samples", samples, "sample count");
    sc_rc->add_flag("--exact-dump", exact_dump, "also dump the exact law (<= 22 edges)");

    auto* sc_potts = app.add_subcommand("sample-potts", "Potts Glauber samples");
    add_common(sc_potts, true);
    add_family(sc_potts);
    sc_potts->add_option("--colors", qi, "number of spins");
    sc_potts->add_option("--beta", beta, "inverse temperature (default -ln(1-p))");
    sc_potts->add_option("--samples", samples, "sample count");
    sc_potts->add_option("--gap-sweeps", gap_sweeps, "sweeps between samples");
    sc_potts->add_option("--burn-sweeps", burn_sweeps, "burn-in sweeps");

    auto* sc_couple = app.add_subcommand("couple", "extreme-state coupling times");
    add_common(sc_couple, true);
    add_family(sc_couple);
    sc_couple->add_option("--ns", ns, "graph sizes")->delimiter(',');
    sc_couple->add_option("--seeds", seeds_n, "replicas per size");
    sc_couple->add_option("--t-max", t_max, "coupling timeout");

    auto* sc_shatter = app.add_subcommand("shatter", "cluster statistics of X^1_t");
    add_common(sc_shatter, true);
    add_family(sc_shatter);
    sc_shatter->add_option("--t", t, "run length");
    sc_shatter->add_option("--seeds", seeds_n, "replicas");
    sc_shatter->add_option("--K", K, "sparsity bound");
    sc_shatter->add_option("--R", R, "ball radius (default 0.3 log2 n)");

    auto* sc_tree = app.add_subcommand("tree-decay", "root connectivity decay on regular trees");
    add_common(sc_tree, true);
    sc_tree->add_option("--arity", arity, "tree arity");
    sc_tree->add_option("--h-min", h_min, "min height");
    sc_tree->add_option("--h-max", h_max, "max height");

    auto* sc_infl = app.add_subcommand("influence", "wired-vs-free influence on tree balls");
    add_common(sc_infl, true);
    sc_infl->add_option("--arity", arity, "tree arity");
    sc_infl->add_option("--r-max", r_max, "max radius");

    auto* sc_bn = app.add_subcommand("potts-bottleneck", "escape times from A_eps");
    sc_bn->add_option("--seed", seed, "master seed");
    sc_bn->add_option("--colors", qi, "number of spins");
    sc_bn->add_option("--beta", beta, "inverse temperature");
    sc_bn->add_option("--beta-frac", beta_frac, "set beta = frac * beta_u(colors, gamma)");
    sc_bn->add_option("--gamma", gamma, "branching parameter for --beta-frac");
    sc_bn->add_option("--eps", eps, "bottleneck gap fraction");
    sc_bn->add_option("--n", n, "vertex count");
    sc_bn->add_option("--dstars", dstars, "planted degrees")->delimiter(',');
    sc_bn->add_option("--seeds", seeds_n, "escape replicas per degree");
    sc_bn->add_option("--step-cap", step_cap, "censoring cap in steps");

    auto* sc_val = app.add_subcommand("validate", "exact-oracle validation suite");
    sc_val->add_option("--suite", suite, "suite name (small-oracles)");

    for (CLI::App* sub : {sc_threshold, sc_gen, sc_rc, sc_potts, sc_couple, sc_shatter, sc_tree,
                          sc_infl, sc_bn, sc_val})
        sub->fallthrough();  // --out/--threads/--config may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, bad flags exit 2
    }

    try {
        std::filesystem::create_directories(out_dir);

        const std::map<std::string, Runner> runners{
            {"threshold", run_threshold},       {"gen-graph", run_gen_graph},
            {"sample-rc", run_sample_rc},       {"sample-potts", run_sample_potts},
            {"couple", run_couple},             {"shatter", run_shatter},
            {"tree-decay", run_tree_decay},     {"influence", run_influence},
            {"potts-bottleneck", run_potts_bottleneck},
        };

        std::string sub;
        json P;
        if (!replay_path.empty()) {
            std::ifstream in(replay_path);
            if (!in) throw InvalidInput("cannot read " + replay_path);
            json manifest;
            in >> manifest;
            sub = manifest.at("subcommand").get<std::string>();
            P = manifest.at("params");
            P["threads"] = threads;  // pool size may differ; results may not
        } else if (sc_val->parsed()) {
            if (suite != "small-oracles") {
                std::fprintf(stderr, "unknown suite: %s\n", suite.c_str());
                return 2;
            }
            return run_small_oracles() == 0 ? 0 : 3;
        } else {
            const auto null_unless = [](bool given, double v) {
                return given ? json(v) : json(nullptr);
            };
            if (sc_threshold->parsed()) {
                sub = "threshold";
                P = {{"q_list", q_list}, {"gamma_list", gamma_list}, {"seed", 0}};
            } else if (sc_gen->parsed()) {
                sub = "gen-graph";
                P = {{"family", family}, {"n", n},           {"lambda", lambda},
                     {"degree", degree}, {"seed", seed},     {"graph", graph_file}};
            } else if (sc_rc->parsed()) {
                sub = "sample-rc";
                P = {{"family", family},   {"n", n},
                     {"lambda", lambda},   {"degree", degree},
                     {"graph", graph_file},{"bc", bc},
                     {"q", q},             {"gamma", gamma},
                     {"p", p},             {"p_frac", null_unless(sc_rc->count("--p-frac") > 0, p_frac)},
                     {"t", t},             {"burn_t", burn_t},
                     {"samples", samples}, {"exact_dump", exact_dump},
                     {"seed", seed}};
            } else if (sc_potts->parsed()) {
                sub = "sample-potts";
                P = {{"family", family},   {"n", n},
                     {"lambda", lambda},   {"degree", degree},
                     {"graph", graph_file},{"q", qi},
                     {"gamma", gamma},     {"p", p},
                     {"p_frac", null_unless(sc_potts->count("--p-frac") > 0, p_frac)},
                     {"beta", null_unless(sc_potts->count("--beta") > 0, beta)},
                     {"samples", samples}, {"gap_sweeps", gap_sweeps},
                     {"burn_sweeps", burn_sweeps}, {"seed", seed}};
            } else if (sc_couple->parsed()) {
                sub = "couple";
                P = {{"family", family}, {"lambda", lambda}, {"degree", degree},
                     {"graph", graph_file}, {"q", q},        {"gamma", gamma},
                     {"p", p},           {"p_frac", null_unless(sc_couple->count("--p-frac") > 0, p_frac)},
                     {"ns", ns},         {"seeds", seeds_n}, {"t_max", t_max},
                     {"seed", seed}};
            } else if (sc_shatter->parsed()) {
                sub = "shatter";
                P = {{"family", family}, {"n", n},           {"lambda", lambda},
                     {"degree", degree}, {"graph", graph_file},
                     {"q", q},           {"gamma", gamma},   {"p", p},
                     {"p_frac", null_unless(sc_shatter->count("--p-frac") > 0, p_frac)},
                     {"t", t},           {"seeds", seeds_n}, {"K", K},
                     {"R", R >= 0 ? json(R) : json(nullptr)}, {"seed", seed}};
            } else if (sc_tree->parsed()) {
                sub = "tree-decay";
                P = {{"arity", arity}, {"q", q},           {"gamma", gamma},
                     {"p", p},         {"p_frac", null_unless(sc_tree->count("--p-frac") > 0, p_frac)},
                     {"h_min", h_min}, {"h_max", h_max},   {"seed", 0}};
            } else if (sc_infl->parsed()) {
                sub = "influence";
                P = {{"arity", arity}, {"q", q},           {"gamma", gamma},
                     {"p", p},         {"p_frac", null_unless(sc_infl->count("--p-frac") > 0, p_frac)},
                     {"r_max", r_max}, {"seed", 0}};
            } else if (sc_bn->parsed()) {
                sub = "potts-bottleneck";
                P = {{"q", qi},
                     {"beta", null_unless(sc_bn->count("--beta") > 0, beta)},
                     {"beta_frac", beta_frac},
                     {"gamma", gamma},
                     {"eps", eps},
                     {"n", n},
                     {"dstars", dstars},
                     {"seeds", seeds_n},
                     {"step_cap", step_cap},
                     {"seed", seed}};
            } else {
                std::fprintf(stderr, "%s\n", app.help().c_str());
                return 2;
            }
            P["threads"] = threads;
        }

        const std::string started = now_iso8601();
        const auto files = runners.at(sub)(P, out_dir);
        json manifest = {{"subcommand", sub},
                         {"version", kVersion},
                         {"seed", P.value("seed", std::uint64_t{0})},
                         {"params", P},
                         {"started", started},
                         {"finished", now_iso8601()}};
        json digests = json::object();
        for (const auto& f : files) digests[f] = sha256_file(out_dir + "/" + f);
        manifest["outputs"] = digests;
        write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
        return 0;
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const TooLarge& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
