// Regenerates data/maass_level1.jsonl, the bundled level-1 Maass form table.
//
// Eigenvalues and parities are transcribed from published tables (Hejhal;
// Then; the LMFDB list of level-1 Maass forms). Everything else is computed
// here: windowed arithmetic sides AS_i(m) = diagonal + kloosterman -
// continuous are evaluated for Gaussian windows centered at every tabulated
// eigenvalue, and the linear system
//
//   AS_i(m) = sum_j alpha_j t_j(m) f_i(kappa_j)
//
// is solved for X_j(m) = alpha_j t_j(m) across all windows at once, which
// handles the close eigenvalue pairs (gaps 0.58, 0.51, 0.061) without any
// isolation requirement. Two guard eigenvalues past the table edge absorb
// spectral leakage into the last windows and are discarded. Hecke indices
// are the primes below 20; composite coefficients are completed with the
// Hecke relations, so the emitted table is exactly multiplicative. The
// first form's t(2), t(3), t(5) are stored at published precision and the
// extraction is reported against them as an accuracy anchor.

#include "CLI11.hpp"

#include "kuzlab/afe.hpp"
#include "kuzlab/arith.hpp"
#include "kuzlab/dataset.hpp"
#include "kuzlab/smoothing.hpp"
#include "kuzlab/trace.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace kuzlab;

namespace {

struct Seed {
    const char* kappa; // decimal string, published precision
    int parity;
};

// transcribed eigenvalues below 23 with parities (+1 even, -1 odd)
const Seed kSeeds[] = {
    {"9.53369526135", -1},  {"12.17300832468", -1}, {"13.77975135189", +1},
    {"14.35850951826", -1}, {"16.13807317", -1},    {"16.64425920", -1},
    {"17.73856338", +1},    {"18.18091783", -1},    {"19.42351405", +1},
    {"19.48471385", -1},    {"20.00654824", -1},    {"20.81526128", +1},
    {"21.41905858", -1},    {"21.97967972", +1},    {"22.19467397", -1},
    {"22.78908123", -1},
};

// guard eigenvalues just past the table edge (approximate locations); their
// solved weights soak up leakage into the deepest windows and are dropped
const real kGhosts[] = {23.204L, 23.263L};

// published first-form Hecke eigenvalues, the extraction anchors
const real kAnchor2 = -1.068333551L;
const real kAnchor3 = -0.456197355L;
const real kAnchor5 = -0.290305645L;
const real kAnchor2Form2 = 0.2904L; // second form, fewer published digits

// solves A X = B in place (partial pivoting); A is n x n, B is n x r
void solve_inplace(std::vector<std::vector<real>>& A,
                   std::vector<std::vector<real>>& B) {
    const size_t n = A.size(), r = B[0].size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::fabs(A[i][col]) > std::fabs(A[piv][col])) piv = i;
        std::swap(A[col], A[piv]);
        std::swap(B[col], B[piv]);
        if (A[col][col] == 0) throw Error("singular window design matrix");
        for (size_t i = col + 1; i < n; ++i) {
            real f = A[i][col] / A[col][col];
            if (f == 0) continue;
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
            for (size_t j = 0; j < r; ++j) B[i][j] -= f * B[col][j];
        }
    }
    for (size_t col = n; col-- > 0;) {
        for (size_t j = 0; j < r; ++j) {
            real acc = B[col][j];
            for (size_t k = col + 1; k < n; ++k) acc -= A[col][k] * B[k][j];
            B[col][j] = acc / A[col][col];
        }
    }
}

// t on prime powers by the recursion t(p^{k+1}) = t(p) t(p^k) - t(p^{k-1}),
// extended multiplicatively
real hecke_complete(const std::map<u64, real>& tp, u64 n) {
    real out = 1;
    for (u64 p = 2; p <= n; ++p) {
        if (n % p) continue;
        u64 q = 0;
        while (n % p == 0) {
            n /= p;
            ++q;
        }
        auto it = tp.find(p);
        if (it == tp.end())
            throw InsufficientCoefficients("no extracted t("
                                           + std::to_string(p) + ")");
        real tm1 = 1, t1 = it->second, tk = t1; // t(p^0), t(p^1)
        for (u64 k = 1; k < q; ++k) {
            real next = t1 * tk - tm1;
            tm1 = tk;
            tk = next;
        }
        out *= tk;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate the bundled level-1 Maass form dataset"};
    std::string out_path = "data/maass_level1.jsonl";
    bool quick = false;
    int threads = 1;
    u64 L = 20000;
    app.add_option("--out", out_path, "output dataset path");
    app.add_flag("--quick", quick, "first four eigenvalues only (smoke run)");
    app.add_option("--threads", threads, "worker count");
    app.add_option("--L", L, "modulus cap for the Kloosterman sums");
    CLI11_PARSE(app, argc, argv);

    const real G = 0.25L;
    const u64 depth = quick ? 6 : 20;
    QuadratureConfig quad;

    const size_t n_seed = quick ? 4 : std::size(kSeeds);
    const size_t n_ghost = quick ? 1 : std::size(kGhosts);

    std::vector<real> centers;
    for (size_t j = 0; j < n_seed; ++j)
        centers.push_back(std::strtold(kSeeds[j].kappa, nullptr));
    for (size_t j = 0; j < n_ghost; ++j)
        centers.push_back(quick ? centers.back() + 1.5L : kGhosts[j]);
    const size_t W = centers.size();

    std::vector<u64> mset = {1, 2, 3, 4, 5, 6, 7, 11, 13, 17, 19};
    if (quick) mset = {1, 2, 3, 4, 5, 6};
    const size_t R = mset.size();
    u64 m_max = 0;
    for (u64 m : mset) m_max = std::max(m_max, m);

    std::cerr << "kloosterman rows: m <= " << m_max << ", L = " << L << "\n";
    KloostermanRows rows = kloosterman_rows(m_max, 1, L, threads);

    // windowed arithmetic sides
    std::vector<std::vector<real>> AS(W, std::vector<real>(R, 0));
    for (size_t i = 0; i < W; ++i) {
        WeightSpec w = WeightSpec::gaussian_spec(centers[i], G);
        FPlusTable table(w, quad);
        for (size_t k = 0; k < R; ++k) {
            real v = 0;
            bool done = false;
            for (real tt : {1e-5L, 3e-5L, 1e-4L, 3e-4L, 1e-3L}) {
                try {
                    v = arithmetic_side(mset[k], 1, w, quad, tt, L, &rows,
                                        &table, threads);
                    done = true;
                } catch (const TailNotConvergent&) {
                }
                if (done) break;
            }
            if (!done)
                throw TailNotConvergent("window " + fmt15(centers[i]) + " m="
                                        + std::to_string(mset[k]) + " at L="
                                        + std::to_string(L));
            AS[i][k] = v;
        }
        std::cerr << "window " << (i + 1) << "/" << W << " at K = "
                  << fmt15(centers[i]) << " done, AS(1) = " << fmt15(AS[i][0])
                  << "\n";
    }

    // design matrix and solve: F X = AS, X[j][k] = alpha_j t_j(m_k)
    std::vector<std::vector<real>> F(W, std::vector<real>(W, 0));
    for (size_t i = 0; i < W; ++i) {
        WeightSpec w = WeightSpec::gaussian_spec(centers[i], G);
        for (size_t j = 0; j < W; ++j) F[i][j] = weight_f(centers[j], w);
    }
    std::vector<std::vector<real>> X = AS;
    solve_inplace(F, X);

    // assemble records (ghost rows discarded)
    std::vector<MaassFormRecord> forms;
    SmoothingParams afe_params; // defaults: delta = 0.1, C = 10
    for (size_t j = 0; j < n_seed; ++j) {
        real alpha = X[j][0];
        std::map<u64, real> tp;
        for (size_t k = 1; k < R; ++k) tp[mset[k]] = X[j][k] / alpha;

        std::printf("form %2zu  kappa %-14s alpha %- .6Lf  t(2) %- .6Lf  "
                    "t(3) %- .6Lf\n",
                    j + 1, kSeeds[j].kappa, alpha, tp[2], tp[3]);
        // extraction-quality diagnostics: composite indices were extracted
        // independently, the Hecke relations predict them from the primes
        std::printf("         |t^(4)-(t^(2)^2-1)| = %.2Le   "
                    "|t^(6)-t^(2)t^(3)| = %.2Le\n",
                    std::fabs(tp[4] - (tp[2] * tp[2] - 1)),
                    std::fabs(tp[6] - tp[2] * tp[3]));

        if (j == 0) {
            std::printf("         anchors: dt(2) = %.2Le  dt(3) = %.2Le  "
                        "dt(5) = %.2Le\n",
                        std::fabs(tp[2] - kAnchor2),
                        std::fabs(tp[3] - kAnchor3),
                        std::fabs(tp[5] - kAnchor5));
            tp[2] = kAnchor2;
            tp[3] = kAnchor3;
            tp[5] = kAnchor5;
        }
        if (j == 1)
            std::printf("         anchor: dt(2) = %.2Le (published %.4Lf)\n",
                        std::fabs(tp[2] - kAnchor2Form2), kAnchor2Form2);

        MaassFormRecord f;
        f.kappa = centers[j];
        f.parity = kSeeds[j].parity;
        f.alpha = alpha;
        f.coefficients.resize(depth);
        for (u64 n = 1; n <= depth; ++n)
            f.coefficients[n - 1] = hecke_complete(tp, n);
        f.validate();
        real H = afe_hecke_central(f, afe_params);
        std::printf("         central value %.6Lf (parity %+d)\n", H,
                    f.parity);
        forms.push_back(std::move(f));
    }

    // ghosts: report the discarded weights so leakage stays visible
    for (size_t j = n_seed; j < W; ++j)
        std::printf("guard row at %.3Lf discarded, alpha_hat = %.4Le\n",
                    centers[j], X[j][0]);

    std::filesystem::create_directories(
        std::filesystem::path(out_path).parent_path());
    std::ofstream out(out_path, std::ios::binary);
    out << "# level 1 Maass cusp form table, eigenvalues below 23\n"
        << "# kappa, parity: transcribed from published eigenvalue tables\n"
        << "#   (Hejhal; Then; the LMFDB list of level-1 Maass forms)\n"
        << "# coefficients t(n), n <= 20, and alpha: multi-window inversion\n"
        << "#   of the trace identity at G = 0.25 (primes extracted,\n"
        << "#   composites completed by the Hecke relations); form-1 t(2),\n"
        << "#   t(3), t(5) stored at published precision\n"
        << "# regenerate: build/make_fixture --out data/maass_level1.jsonl\n"
        << emit_dataset(forms);
    out.close();

    auto [loaded, manifest] = load_dataset(out_path);
    std::printf("wrote %s: %llu forms, checksum %s\n", out_path.c_str(),
                (unsigned long long)manifest.form_count,
                manifest.checksum.c_str());
    return 0;
}
