#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "shady/shady.hpp"

using namespace shady;

namespace {

constexpr int exit_usage = 64;
constexpr int exit_bound_fails = 2;
constexpr int exit_verification = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text mode prints the headline value bare on its first line; machine mode prints key=value records.
class Report {
public:
    explicit Report(bool machine) : machine_(machine) {}

    void headline(const std::string& key, const std::string& value) {
        if (machine_)
            std::cout << key << '=' << value << '\n';
        else
            std::cout << value << '\n';
    }
    void field(const std::string& key, const std::string& value) {
        std::cout << key << (machine_ ? "=" : ": ") << value << '\n';
    }

private:
    bool machine_;
};

struct Source {
    std::string builtin;
    std::string file;

    void add_to(CLI::App* cmd) {
        auto* b = cmd->add_option("--builtin", builtin, "Built-in polytope: I, J, cube or octahedron");
        auto* f = cmd->add_option("--polytope", file, "Vertex file, one `a//b;...` row per vertex");
        b->excludes(f);
    }

    Polytope load() const {
        if (!builtin.empty()) return builtin_polytope(builtin);
        if (!file.empty()) {
            // A bare builtin name is accepted in place of a file.
            if (!std::filesystem::exists(file)) return builtin_polytope(file);
            return read_polytope(file);
        }
        throw UsageError("a polytope is required (--builtin or --polytope)");
    }

    std::string id() const { return !builtin.empty() ? builtin : std::filesystem::path(file).stem().string(); }
};

Rational rational_arg(const std::string& text, const char* name) {
    try {
        return parse_rational(text);
    } catch (const ParseError&) {
        throw UsageError(std::string(name) + " must be a rational a/b or a//b, got '" + text + "'");
    }
}

std::string matrix_text(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) out += to_string(m.row(i)) + (i + 1 < m.rows() ? "\n" : "");
    return out;
}

void emit_obj(const std::string& path, const Polytope& c) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_obj(out, c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact bounds and certificates for shadiness constants of polytopal norms"};
    app.require_subcommand(1);
    bool machine = false;
    std::uint64_t seed = 0;
    std::string emit_obj_path;
    app.add_flag("--machine", machine, "Emit key=value records");
    app.add_option("--seed", seed, "Seed for randomized checks");
    app.add_option("--emit-obj", emit_obj_path, "Also write the polytope as a Wavefront OBJ mesh");

    // hull
    Source hull_src;
    auto* hull = app.add_subcommand("hull", "Facets, normals and constants of a polytope");
    hull_src.add_to(hull);

    // norm
    Source norm_src;
    std::string norm_point_text;
    auto* norm = app.add_subcommand("norm", "Norm of a point, or the enclosing-ball constants");
    norm_src.add_to(norm);
    norm->add_option("--point", norm_point_text, "Point as `a//b;...` or `a//b,...`");

    // proj-norm
    Source pn_src;
    std::string pn_matrix;
    auto* pn = app.add_subcommand("proj-norm", "Exact operator norm of a matrix");
    pn_src.add_to(pn);
    pn->add_option("--matrix", pn_matrix, "d lines of `;`-separated rationals")->required();

    // shady-test
    Source st_src;
    bool st_decide = false;
    auto* st = app.add_subcommand("shady-test", "Sufficient test for shadiness; SHADY or UNKNOWN");
    st_src.add_to(st);
    st->add_flag("--decide", st_decide, "Also run the exact codimension-one decision");

    // nonshady-construct
    Source nc_src;
    auto* nc = app.add_subcommand("nonshady-construct", "Norm-one rank-2 projection for small polytopes");
    nc_src.add_to(nc);

    // farkas
    auto* farkas = app.add_subcommand("farkas", "Farkas certificate campaigns");
    farkas->require_subcommand(1);
    Source fg_src;
    unsigned fg_n = 0, fg_jobs = 1;
    std::size_t fg_batch = 256;
    std::string fg_alpha, fg_out, fg_tag;
    bool fg_gzip = false, fg_no_resume = false;
    auto* fg = farkas->add_subcommand("gen", "Certify every grid direction");
    fg_src.add_to(fg);
    fg->add_option("--n", fg_n, "Grid resolution")->required()->check(CLI::PositiveNumber);
    fg->add_option("--alpha", fg_alpha, "Bound alpha*")->required();
    fg->add_option("--out", fg_out, "Output directory")->required();
    fg->add_option("--jobs", fg_jobs, "Worker threads")->check(CLI::PositiveNumber);
    fg->add_option("--batch", fg_batch, "Directions per flushed batch")->check(CLI::PositiveNumber);
    fg->add_option("--tag", fg_tag, "File name prefix");
    fg->add_flag("--gzip", fg_gzip, "Write .csv.gz files");
    fg->add_flag("--no-resume", fg_no_resume, "Ignore existing files");

    Source fc_src;
    std::string fc_alpha;
    std::vector<std::string> fc_files;
    unsigned fc_jobs = 1;
    auto* fc = farkas->add_subcommand("check", "Re-verify certificate files");
    fc_src.add_to(fc);
    fc->add_option("--alpha", fc_alpha, "Bound alpha*")->required();
    fc->add_option("--jobs", fc_jobs, "Worker threads")->check(CLI::PositiveNumber);
    fc->add_option("files", fc_files, "Certificate files")->required();

    std::string fb_alpha, fb_c_upper;
    unsigned fb_n = 0;
    auto* fb = farkas->add_subcommand("bound", "Global lower bound implied by a finished campaign");
    fb->add_option("--alpha", fb_alpha, "Bound alpha*")->required();
    fb->add_option("--n", fb_n, "Grid resolution")->required()->check(CLI::PositiveNumber);
    fb->add_option("--c-upper", fb_c_upper, "Upper bound on the enclosing constant C")->required();

    // sos
    auto* sos = app.add_subcommand("sos", "Sum-of-squares infeasibility certificates");
    sos->require_subcommand(1);
    Source sc_src;
    std::string sc_system, sc_cert, sc_alpha, sc_omega;
    long sc_k = 2;
    auto* sc = sos->add_subcommand("check", "Verify a certificate against a constraint system");
    sc_src.add_to(sc);
    sc->add_option("--system", sc_system, "Constraint system file");
    sc->add_option("--k", sc_k, "Projection rank");
    sc->add_option("--alpha", sc_alpha, "Bound alpha*");
    sc->add_option("--omega-sq", sc_omega, "Box bound omega^2");
    sc->add_option("--cert", sc_cert, "Certificate file")->required();

    std::string sd_omega;
    std::uint32_t sd_r = 0;
    std::size_t sd_n = 0;
    auto* sd = sos->add_subcommand("delta", "Delta bound for the Gram basis of weight <= r in n variables");
    sd->add_option("--omega-sq", sd_omega, "Box bound omega^2")->required();
    sd->add_option("--r", sd_r, "Half degree")->required();
    sd->add_option("--n", sd_n, "Variable count")->required()->check(CLI::PositiveNumber);

    // reproduce
    ReproduceOptions ro;
    std::vector<int> ro_only;
    auto* rp = app.add_subcommand("reproduce", "Run the acceptance pipeline and print a pass/fail table");
    rp->add_option("--jobs", ro.jobs, "Worker threads for the campaign")->check(CLI::PositiveNumber);
    rp->add_option("--work-dir", ro.work_dir, "Scratch directory");
    rp->add_option("--only", ro_only, "Criterion IDs to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    Report out(machine);
    try {
        if (*hull) {
            const Polytope c = hull_src.load();
            emit_obj(emit_obj_path, c);
            const auto k = enclosing_constants(c);
            out.headline("vertices", std::to_string(c.vertices().size()));
            out.field("facets", std::to_string(c.facets().size()));
            out.field("r_sq", to_string(k.r_sq));
            out.field("R_sq", to_string(k.R_sq));
            out.field("C_sq", to_string(k.C_sq));
            for (std::size_t f = 0; f < c.facets().size(); ++f) {
                std::string ids;
                for (std::size_t v : c.facets()[f]) ids += (ids.empty() ? "" : ",") + std::to_string(v + 1);
                out.field("facet", to_string(c.normals()[f]) + " " + ids);
            }
            for (const auto& v : c.vertices()) out.field("vertex", to_string(v));
        } else if (*norm) {
            const Polytope c = norm_src.load();
            emit_obj(emit_obj_path, c);
            if (!norm_point_text.empty()) {
                std::string text = norm_point_text;
                std::replace(text.begin(), text.end(), ',', ';');
                std::istringstream in(text);
                const auto rows = read_rational_rows(in);
                if (rows.size() != 1 || rows.front().size() != c.dim()) throw UsageError("--point needs one row of d rationals");
                out.headline("norm", to_string(norm_point(c, rows.front())));
            } else {
                const auto k = enclosing_constants(c);
                out.headline("C_sq", to_string(k.C_sq));
                out.field("r_sq", to_string(k.r_sq));
                out.field("R_sq", to_string(k.R_sq));
                out.field("C_upper", to_string(k.C_upper));
            }
        } else if (*pn) {
            const Polytope c = pn_src.load();
            emit_obj(emit_obj_path, c);
            const Matrix p = Matrix::from_rows(read_rational_rows(std::filesystem::path(pn_matrix)));
            const auto r = operator_norm(c, p);
            out.headline("norm", to_string(r.value));
            out.field("h", to_string(c.normals()[r.normal_index]));
            out.field("v", to_string(c.half_vertices()[r.half_vertex_index]));
        } else if (*st) {
            const Polytope c = st_src.load();
            emit_obj(emit_obj_path, c);
            const bool gp = general_position(half_normals(c));
            const auto cov = covers_all_planes(c);
            out.headline("result", gp && cov.covers ? "SHADY" : "UNKNOWN");
            out.field("general_position", gp ? "yes" : "no");
            if (cov.witness) {
                out.field("uncovered_plane_normal", to_string(*cov.witness));
                out.field("pairs_met", std::to_string(count_pairs_met(c, *cov.witness)));
            }
            if (st_decide) {
                const auto d = decide_shady_codim_one(c);
                out.field("codim_one", d.shady ? "shady" : "not shady");
                out.field("smallest_candidate_norm", to_string(d.smallest_norm));
            }
        } else if (*nc) {
            const Polytope c = nc_src.load();
            emit_obj(emit_obj_path, c);
            ShadinessWitness w;
            try {
                w = norm_one_projection(c, nc_src.id());
            } catch (const NoCycleFound&) {
                const auto d = decide_shady_codim_one(c);
                if (!d.norm_one) {
                    out.headline("result", "NONE");
                    out.field("smallest_candidate_norm", to_string(d.smallest_norm));
                    return exit_verification;
                }
                w = make_witness(c, *d.norm_one, nc_src.id());
            }
            out.headline("norm", to_string(w.bound));
            if (machine)
                for (std::size_t i = 0; i < w.projection.P.rows(); ++i)
                    out.field("row", to_string(w.projection.P.row(i)));
            else
                std::cout << matrix_text(w.projection.P) << '\n';
        } else if (*fg) {
            const Polytope c = fg_src.load();
            emit_obj(emit_obj_path, c);
            CampaignOptions opt;
            opt.jobs = fg_jobs;
            opt.batch = fg_batch;
            opt.gzip = fg_gzip;
            opt.resume = !fg_no_resume;
            opt.tag = fg_tag.empty() ? fg_src.id() : fg_tag;
            const Rational alpha = rational_arg(fg_alpha, "--alpha");
            std::filesystem::create_directories(fg_out);
            try {
                const auto s = run_campaign(c, fg_n, alpha, fg_out, opt);
                out.headline("certified", std::to_string(s.certified + s.resumed));
                out.field("grid_points", std::to_string(s.grid_points));
                out.field("raw_points", std::to_string(s.raw_points));
                out.field("resumed", std::to_string(s.resumed));
                for (int k = 1; k <= 3; ++k)
                    out.field("support_" + std::to_string(k), std::to_string(s.support_histogram[k]));
                if (s.min_lambda) {
                    out.field("min_lambda", to_string(*s.min_lambda));
                    out.field("min_lambda_w", to_string(s.min_lambda_w));
                }
                for (const auto& f : s.files) out.field("file", f.string());
            } catch (const BoundFails& e) {
                out.headline("result", "BOUND_FAILS");
                out.field("w", to_string(e.w()));
                out.field("lambda", to_string(e.lambda()));
                return exit_bound_fails;
            }
        } else if (*fc) {
            const Polytope c = fc_src.load();
            const Rational alpha = rational_arg(fc_alpha, "--alpha");
            std::size_t lines = 0, verified = 0;
            bool ok = true;
            for (const auto& f : fc_files) {
                try {
                    const auto r = check_certificate_file(c, f, alpha, fc_jobs);
                    lines += r.lines;
                    verified += r.verified;
                    if (r.first_failure_line) {
                        ok = false;
                        out.field("failure", f + ":" + std::to_string(r.first_failure_line) + " " +
                                                 to_string(r.first_failure));
                    }
                } catch (const ParseError& e) {
                    ok = false;
                    out.field("failure", f + ":" + std::to_string(e.line()) + " " + e.what());
                }
            }
            out.headline("verified", std::to_string(verified) + "/" + std::to_string(lines));
            if (!ok) return exit_verification;
        } else if (*fb) {
            const Rational b = global_lower_bound(rational_arg(fb_alpha, "--alpha"), fb_n,
                                                  rational_arg(fb_c_upper, "--c-upper"));
            out.headline("lower_bound", to_string(b));
            out.field("epsilon_bar", to_string(epsilon_bar(fb_n)));
        } else if (*sc) {
            ConstraintSystem sys;
            if (!sc_system.empty()) {
                std::ifstream in(sc_system);
                if (!in) throw std::runtime_error("cannot open " + sc_system);
                sys = read_constraint_system(in);
            } else {
                if (sc_alpha.empty() || sc_omega.empty())
                    throw UsageError("sos check needs --system, or a polytope with --k, --alpha and --omega-sq");
                sys = build_constraint_system(sc_src.load(), sc_k, rational_arg(sc_alpha, "--alpha"),
                                              rational_arg(sc_omega, "--omega-sq"));
            }
            std::ifstream in(sc_cert);
            if (!in) throw std::runtime_error("cannot open " + sc_cert);
            WeightedSosCertificate cert;
            try {
                cert = read_sos_certificate(in);
            } catch (const ParseError& e) {
                out.headline("result", "FAILED");
                out.field("reason", "line " + std::to_string(e.line()) + ": " + e.what());
                return exit_verification;
            }
            const auto r = verify_sos_certificate(sys, cert);
            out.headline("result", r ? "VERIFIED" : "FAILED");
            if (!r) {
                out.field("reason", r.reason);
                return exit_verification;
            }
        } else if (*sd) {
            const auto omega = rational_arg(sd_omega, "--omega-sq");
            out.headline("delta", to_string(delta_closed_form(omega, sd_r, sd_n)));
        } else if (*rp) {
            ro.seed = seed;
            std::filesystem::create_directories(ro.work_dir);
            const auto results = reproduce(ro, std::set<int>(ro_only.begin(), ro_only.end()));
            bool all = true;
            for (const auto& r : results) {
                all &= r.passed;
                if (machine) {
                    std::cout << "criterion=" << r.id << " passed=" << (r.passed ? 1 : 0) << " detail=" << r.detail
                              << '\n';
                } else {
                    std::cout << (r.passed ? "PASS" : "FAIL") << " #" << r.id << ' ' << r.title << ": " << r.detail
                              << '\n';
                }
            }
            if (!all) return exit_verification;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const BoundFails& e) {
        std::cerr << "bound fails: " << e.what() << '\n';
        return exit_bound_fails;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_verification;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
