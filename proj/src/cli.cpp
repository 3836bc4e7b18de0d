#include "orbitdesign/cli.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitdesign/construct.hpp"
#include "orbitdesign/dalg.hpp"
#include "orbitdesign/design.hpp"
#include "orbitdesign/group.hpp"
#include "orbitdesign/io.hpp"
#include "orbitdesign/repdec.hpp"
#include "orbitdesign/rng.hpp"
#include "orbitdesign/schur.hpp"

namespace orbitdesign::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr int kOracleTrials = 50;
constexpr int kTraceTrials = 10;

group::FiniteMatrixGroup load_group(const std::string& path, const RunConfig& cfg) {
    group::GeneratorSet gens = io::load_group_file(path);
    const int cap = cfg.max_order > static_cast<std::size_t>(INT_MAX)
                        ? INT_MAX
                        : static_cast<int>(cfg.max_order);
    return group::enumerate_closure(gens, cap);
}

// --vector accepts either an inline JSON array "[x1, ...]" or a file path.
Eigen::VectorXd read_vector_arg(const std::string& arg) {
    const auto pos = arg.find_first_not_of(" \t\n\r");
    if (pos != std::string::npos && arg[pos] == '[') return io::parse_vector_inline(arg);
    return io::load_vector_file(arg);
}

Eigen::VectorXd maybe_normalize(Eigen::VectorXd v, const RunConfig& cfg) {
    if (!cfg.normalize) return v;
    const double nrm = v.norm();
    if (nrm <= 1e-12) {
        throw design::NotUnitVector("cannot normalize the zero vector");
    }
    return v / nrm;
}

// Primary payload goes to --output when set, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw io::ParseError("cannot open output file: " + cfg.output);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io::ParseError("cannot open output file: " + path);
    out << text;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

ordered_json group_json(const std::string& path, const group::FiniteMatrixGroup& G) {
    ordered_json j;
    j["file"] = path;
    j["order"] = G.order();
    j["dim"] = G.dim;
    return j;
}

ordered_json component_json(std::size_t index, const repdec::IsotypicComponent& comp) {
    ordered_json j;
    j["index"] = index;
    j["D"] = std::string(1, dalg::algebra_letter(comp.fs_tag));
    j["n"] = comp.n;
    j["m"] = comp.m;
    j["dim"] = comp.dim_real;
    return j;
}

ordered_json design_report_json(const design::DesignReport& r) {
    ordered_json j;
    j["dim"] = r.dim;
    j["first_moment_norm"] = r.first_moment_norm;
    j["second_moment_deviation"] = r.second_moment_deviation;
    j["subspace_residual"] = r.subspace_residual;
    j["is_1_design"] = r.is_1_design;
    j["is_2_design"] = r.is_2_design;
    j["trivial_overlap_warning"] = r.trivial_overlap_warning;
    j["tol"] = r.tol;
    return j;
}

ordered_json classification_json(const construct::ClassificationResult& cls,
                                 const repdec::Decomposition& dec) {
    ordered_json j;
    j["dim_V"] = cls.dim_V;
    ordered_json comps = ordered_json::array();
    for (std::size_t i = 0; i < cls.components.size(); ++i) {
        ordered_json c = component_json(i, dec.components[i]);
        const auto& entry = cls.components[i];
        c["in_target"] = entry.in_target;
        c["scale_observed"] = entry.scale_observed;
        c["scale_expected"] = entry.scale_expected;
        c["scale_residual"] = entry.scale_residual;
        c["gram_residual"] = entry.gram_residual;
        c["pass"] = entry.pass;
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    j["off_target_norm"] = cls.off_target_norm;
    j["max_residual"] = cls.max_residual;
    j["overall_pass"] = cls.overall_pass;
    return j;
}

// Orthonormal ambient basis of the direct sum of the selected components.
Eigen::MatrixXd stacked_basis(const repdec::Decomposition& dec,
                              const std::vector<std::size_t>& selected) {
    int dim_V = 0;
    for (std::size_t idx : selected) dim_V += dec.components[idx].dim_real;
    Eigen::MatrixXd basis(dec.ambient_dim, dim_V);
    int col = 0;
    for (std::size_t idx : selected) {
        const auto& comp = dec.components[idx];
        basis.middleCols(col, comp.dim_real) = comp.real_basis;
        col += comp.dim_real;
    }
    return basis;
}

int cmd_analyze(const RunConfig& cfg, const std::string& group_path) {
    const auto G = load_group(group_path, cfg);
    const auto dec = repdec::decompose(G, cfg.seed);

    if (cfg.format == "csv") {
        std::string csv = "D,n,m,dim\n";
        for (const auto& comp : dec.components) {
            csv += dalg::algebra_letter(comp.fs_tag);
            csv += "," + std::to_string(comp.n) + "," + std::to_string(comp.m) + "," +
                   std::to_string(comp.dim_real) + "\n";
        }
        emit(cfg, csv);
        return kExitPass;
    }

    ordered_json j;
    j["group"] = group_json(group_path, G);
    j["trivial_multiplicity"] = dec.trivial_multiplicity;
    ordered_json comps = ordered_json::array();
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        comps.push_back(component_json(i, dec.components[i]));
    }
    j["components"] = std::move(comps);
    emit(cfg, j.dump(2));
    return kExitPass;
}

int cmd_verify(const RunConfig& cfg, const std::string& group_path,
               const std::string& vector_arg) {
    const auto G = load_group(group_path, cfg);
    const Eigen::VectorXd v = maybe_normalize(read_vector_arg(vector_arg), cfg);
    const auto report = design::check_design(G, v, cfg.tol);
    const auto dec = repdec::decompose(G, cfg.seed);
    const auto cls = construct::classify_orbit(G, dec, v, cfg.tol);
    const double oracle = design::polynomial_average_check(G, v, kOracleTrials, cfg.seed);

    ordered_json j;
    j["group"] = group_json(group_path, G);
    j["vector"] = vector_json(v);
    j["moments"] = design_report_json(report);
    j["classification"] = classification_json(cls, dec);
    ordered_json po;
    po["trials"] = kOracleTrials;
    po["max_discrepancy"] = oracle;
    j["polynomial_oracle"] = std::move(po);
    j["pass"] = report.is_2_design;
    emit(cfg, j.dump(2));
    return report.is_2_design ? kExitPass : kExitMathFail;
}

int cmd_construct(const RunConfig& cfg, const std::string& group_path,
                  const std::vector<std::size_t>& selected_arg) {
    const auto G = load_group(group_path, cfg);
    const auto dec = repdec::decompose(G, cfg.seed);

    std::vector<std::size_t> selected = selected_arg;
    if (selected.empty()) {
        selected.resize(dec.components.size());
        std::iota(selected.begin(), selected.end(), std::size_t{0});
    }
    const Eigen::VectorXd v = construct::construct_global_design(dec, selected, cfg.seed);

    // Verify in the space actually constructed on: the direct sum of the
    // selected components, which is all of them by default.
    const Eigen::MatrixXd basis = stacked_basis(dec, selected);
    const int dim_V = static_cast<int>(basis.cols());
    const auto report = design::check_design_in_subspace(G, v, basis, cfg.tol);
    const bool pass = report.is_2_design;

    const auto orbit = group::orbit_points(G, v, cfg.tol);
    const std::string csv = io::points_to_csv(orbit);

    if (cfg.format == "csv") {
        emit(cfg, csv);
        return pass ? kExitPass : kExitMathFail;
    }
    if (!cfg.output.empty()) write_file(cfg.output, csv);

    ordered_json j;
    j["group"] = group_json(group_path, G);
    j["seed"] = cfg.seed;
    ordered_json comps = ordered_json::array();
    for (std::size_t idx : selected) {
        ordered_json c = component_json(idx, dec.components[idx]);
        c["weight"] = std::sqrt(static_cast<double>(dec.components[idx].dim_real) / dim_V);
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    j["dim_V"] = dim_V;
    j["vector"] = vector_json(v);
    j["orbit_size"] = orbit.size();
    if (!cfg.output.empty()) j["orbit_csv"] = cfg.output;
    j["verification"] = design_report_json(report);
    j["stamp"] = pass ? "2-design: pass" : "2-design: fail";
    std::cout << j.dump(2) << "\n";
    return pass ? kExitPass : kExitMathFail;
}

int cmd_schur_check(const RunConfig& cfg, const std::string& group_path) {
    const auto G = load_group(group_path, cfg);
    const auto dec = repdec::decompose(G, cfg.seed);

    bool all_pass = true;
    ordered_json comps = ordered_json::array();
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        const auto& comp = dec.components[i];
        const auto table = schur::coefficient_table(G, comp);
        const auto rr = schur::verify_schur_real(table, cfg.tol);
        const auto dr = schur::verify_schur_d(table, cfg.tol);

        // Trace identity of right multiplication: the realified operator of
        // x -> x lambda on D^n has trace n * dim(D) * Re(lambda).
        Rng rng(cfg.seed + 1000003ULL * (i + 1));
        double trace_residual = 0.0;
        for (int t = 0; t < kTraceTrials; ++t) {
            dalg::DScalar lambda(comp.fs_tag);
            for (int X = 0; X < comp.fs_tag.dim(); ++X) lambda.c[X] = rng.normal();
            const int n = 1 + static_cast<int>(rng.next_u64() % 4);
            const double expected = n * comp.fs_tag.dim() * lambda.re();
            trace_residual = std::max(
                trace_residual, std::abs(dalg::right_mult_real_trace(lambda, n) - expected));
        }
        const bool trace_pass = trace_residual <= cfg.tol;
        const bool pass = rr.pass && dr.pass && trace_pass;
        all_pass = all_pass && pass;

        ordered_json c = component_json(i, comp);
        c["real_residual"] = rr.max_residual;
        c["real_pass"] = rr.pass;
        c["d_residual"] = dr.max_residual;
        c["d_pass"] = dr.pass;
        c["trace_residual"] = trace_residual;
        c["trace_pass"] = trace_pass;
        c["tolerance"] = rr.tolerance;
        c["pass"] = pass;
        comps.push_back(std::move(c));
    }

    ordered_json j;
    j["group"] = group_json(group_path, G);
    j["components"] = std::move(comps);
    j["all_pass"] = all_pass;
    emit(cfg, j.dump(2));
    return all_pass ? kExitPass : kExitMathFail;
}

int cmd_export(const RunConfig& cfg, const std::string& group_path,
               const std::string& vector_arg) {
    const auto G = load_group(group_path, cfg);

    if (!vector_arg.empty()) {
        const Eigen::VectorXd v = maybe_normalize(read_vector_arg(vector_arg), cfg);
        emit(cfg, io::points_to_csv(group::orbit_points(G, v, cfg.tol)));
        return kExitPass;
    }

    ordered_json j;
    j["group"] = group_json(group_path, G);
    ordered_json elems = ordered_json::array();
    for (const auto& g : G.elements) {
        ordered_json rows = ordered_json::array();
        for (int r = 0; r < g.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (int c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
            rows.push_back(std::move(row));
        }
        elems.push_back(std::move(rows));
    }
    j["elements"] = std::move(elems);
    emit(cfg, j.dump(2));
    return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Verify and construct spherical 2-design orbits of finite matrix groups"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--tol", cfg.tol, "comparison tolerance")->capture_default_str();
    app.add_option("--max-order", cfg.max_order, "cap on group closure enumeration")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for decomposition and construction")
        ->capture_default_str();
    app.add_flag("--normalize", cfg.normalize, "normalize the input vector first");
    app.add_option("--format", cfg.format, "payload format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", cfg.output,
                   "write the file payload here (the orbit CSV for construct, the report "
                   "otherwise) instead of stdout");

    std::string group_path;
    std::string vector_arg;
    std::vector<std::size_t> selected;

    auto* analyze = app.add_subcommand(
        "analyze", "decompose the group action into isotypic components");
    analyze->add_option("group", group_path, "group JSON file")->required();
    analyze->fallthrough();

    auto* verify = app.add_subcommand(
        "verify", "check the moment conditions and classification for (group, vector)");
    verify->add_option("group", group_path, "group JSON file")->required();
    verify->add_option("--vector", vector_arg, "unit vector: inline JSON array or file")
        ->required();
    verify->fallthrough();

    auto* construct_cmd = app.add_subcommand(
        "construct", "build a vector whose orbit is a 2-design and emit its orbit");
    construct_cmd->add_option("group", group_path, "group JSON file")->required();
    construct_cmd
        ->add_option("--components", selected,
                     "component indices to construct on (default: all)")
        ->delimiter(',');
    construct_cmd->fallthrough();

    auto* schur_cmd = app.add_subcommand(
        "schur-check", "verify coefficient orthogonality per isotypic component");
    schur_cmd->add_option("group", group_path, "group JSON file")->required();
    schur_cmd->fallthrough();

    auto* export_cmd = app.add_subcommand(
        "export", "dump the orbit of --vector as CSV, or all group elements as JSON");
    export_cmd->add_option("group", group_path, "group JSON file")->required();
    export_cmd->add_option("--vector", vector_arg, "vector: inline JSON array or file");
    export_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(cfg, group_path);
        if (app.got_subcommand(verify)) return cmd_verify(cfg, group_path, vector_arg);
        if (app.got_subcommand(construct_cmd)) return cmd_construct(cfg, group_path, selected);
        if (app.got_subcommand(schur_cmd)) return cmd_schur_check(cfg, group_path);
        if (app.got_subcommand(export_cmd)) return cmd_export(cfg, group_path, vector_arg);
        std::cerr << "error: no subcommand given\n";
        return kExitUsage;
    } catch (const construct::MultiplicityExceedsDimension& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFail;
    } catch (const design::ZeroProjection& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFail;
    } catch (const design::ComponentNotDesign& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFail;
    } catch (const group::OrderCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const repdec::DegenerateSplit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const repdec::UnexpectedCommutantDim& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const repdec::StructureMapFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        // Covers NotUnitVector, DimensionMismatch, NonOrthogonalGenerator and
        // bad component selections: all problems with what the user handed in.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace orbitdesign::cli
