// Command-line front end: spaces, Gram data, closures, fusion, flips and
// type-D classification. Reports are JSON.

#include "matsuo/matsuo.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace matsuo;
using nlohmann::json;

namespace {

struct Output {
    std::string path;

    void emit(const json& j) const {
        if (path.empty()) {
            std::cout << j.dump(2) << "\n";
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << j.dump(2) << "\n";
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

SpacePtr resolve_space(const std::string& spec, const std::string& cayley, int n) {
    if (!cayley.empty()) {
        if (n < 2) throw std::invalid_argument("--cayley needs --n >= 2");
        return build_wreath_space(load_cayley_file(cayley), n);
    }
    if (spec.empty()) throw std::invalid_argument("give --space FAMILY:n or --cayley FILE --n N");
    return parse_space_spec(spec);
}

template <class S>
json fusion_json(const Subalgebra<S>& A, const Generator& axis, const std::string& law_name) {
    const auto x = axis.template dense<S>(A.space().size());
    const auto law = law_by_name<S>(law_name, A.algebra().eta());
    auto rep = check_fusion(A, x, law);
    json j = rep.to_json(axis.name);
    j["subalgebra_dim"] = A.dimension();
    j["mode"] = A.mode().describe();
    j["primitive"] = check_primitive(A, x);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Matsuo algebra engine for wreath-product 3-transposition groups"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--out", out.path, "write the JSON report to a file");

    std::string space_spec, cayley;
    int cayley_n = 0;
    auto add_space = [&](CLI::App* sub) {
        sub->add_option("--space", space_spec, "named space, e.g. W3A:4");
        sub->add_option("--cayley", cayley, "Cayley table file for a custom base group");
        sub->add_option("--n", cayley_n, "positions for --cayley");
    };

    auto* space = app.add_subcommand("space", "build, summarize or export a Fischer space");
    std::string space_action = "build";
    space->add_option("action", space_action, "build | stats | export")->check(CLI::IsMember({"build", "stats", "export"}));
    add_space(space);

    auto* gram_cmd = app.add_subcommand("gram", "Gram determinant, critical values and radicals");
    bool critical = false;
    std::string radical_at;
    add_space(gram_cmd);
    gram_cmd->add_flag("--critical", critical, "report rational critical values");
    gram_cmd->add_option("--radical", radical_at, "radical dimension at this eta");

    auto* close_cmd = app.add_subcommand("close", "subalgebra generated by a list of vectors");
    std::string gens_spec, mode_spec = "symbolic", csv_path;
    bool allow_critical = false, with_structure = false;
    add_space(close_cmd);
    close_cmd->add_option("--gens", gens_spec, "generators, ';'-separated, terms joined by '+'")->required();
    close_cmd->add_option("--mode", mode_spec, "symbolic | eta=<rational>");
    close_cmd->add_flag("--allow-critical", allow_critical, "permit critical or special eta values");
    close_cmd->add_flag("--structure", with_structure, "include structure constants");
    close_cmd->add_option("--csv", csv_path, "write the multiplication table as CSV");

    auto* fusion_cmd = app.add_subcommand("fusion", "check a fusion law for an axis");
    std::string axis_spec, law_name = "J", within = "full";
    add_space(fusion_cmd);
    fusion_cmd->add_option("--axis", axis_spec, "axis, e.g. b_{1,2} or b_{1,2}+b_{3,4}")->required();
    fusion_cmd->add_option("--law", law_name, "J | M")->check(CLI::IsMember({"J", "M"}));
    fusion_cmd->add_option("--mode", mode_spec, "symbolic | eta=<rational>");
    fusion_cmd->add_option("--within", within, "'full', 'axis', or a generator list for the ambient subalgebra");
    fusion_cmd->add_flag("--allow-critical", allow_critical, "permit critical or special eta values");

    auto* flip_cmd = app.add_subcommand("flip", "standard flip: orbits, fixed and flip subalgebras");
    std::string family;
    int k = 2;
    std::vector<std::string> etas;
    bool no_symbolic = false;
    flip_cmd->add_option("--family", family, "W2A (2Q), W3A, W2D, WrA4, WrA4outer, Wr3p2, Wr3x3")->required();
    flip_cmd->add_option("--k", k, "n = 2k positions");
    flip_cmd->add_option("--eta", etas, "evaluated modes; critical values are allowed and flagged");
    flip_cmd->add_flag("--no-symbolic", no_symbolic, "skip the symbolic closure");

    auto* classify_cmd = app.add_subcommand("classify", "type-D configuration census");
    std::string ambient, eta_text = "7";
    std::size_t sample = 0;
    std::uint64_t seed = 1;
    bool no_recertify = false;
    classify_cmd->add_option("--ambient", ambient, "ambient space, e.g. W3A:4")->required();
    classify_cmd->add_option("--sample", sample, "sample this many configurations instead of enumerating");
    classify_cmd->add_option("--seed", seed, "sampling seed");
    classify_cmd->add_option("--eta", eta_text, "evaluation point for the search");
    classify_cmd->add_flag("--allow-critical", allow_critical, "permit critical or special eta values");
    classify_cmd->add_flag("--no-recertify", no_recertify, "skip symbolic re-certification");
    classify_cmd->add_option("--csv", csv_path, "write the buckets as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (space->parsed()) {
            auto sp = resolve_space(space_spec, cayley, cayley_n);
            if (space_action == "export")
                out.emit(export_space(*sp));
            else if (space_action == "stats")
                out.emit(space_stats(*sp));
            else
                out.emit({{"space", sp->id()}, {"points", sp->size()}, {"lines", sp->line_count()}, {"connected", sp->connected()}});
            return 0;
        }
        if (gram_cmd->parsed()) {
            auto sp = resolve_space(space_spec, cayley, cayley_n);
            json j;
            const auto cv = critical_values(*sp);
            if (critical) {
                j = critical_report(*sp, cv);
            } else {
                j = {{"space", sp->id()}, {"det_degree", cv.det.degree()}, {"determinant", to_string(cv.det)}};
            }
            bool ok = true;
            if (!radical_at.empty()) {
                const Rational r = parse_rational(radical_at);
                const auto dim = radical_dim(*sp, r);
                j["radical"] = {{"eta", to_string(r)}, {"dim", dim}};
                const bool is_root = cv.det(r) == 0;
                ok = (dim > 0) == is_root;
            }
            out.emit(j);
            return ok ? 0 : 1;
        }
        if (close_cmd->parsed()) {
            auto sp = resolve_space(space_spec, cayley, cayley_n);
            const auto gens = parse_generators(*sp, gens_spec);
            const auto mode = parse_mode(mode_spec, allow_critical);
            auto A = close_any(sp, gens, mode);
            bool closed = true;
            std::visit(
                [&](const auto& sub) {
                    json j = sub.to_json(with_structure);
                    closed = sub.is_closed();
                    j["closed"] = closed;
                    if (!csv_path.empty()) write_text(csv_path, sub.structure_csv());
                    out.emit(j);
                },
                A);
            return closed ? 0 : 1;
        }
        if (fusion_cmd->parsed()) {
            auto sp = resolve_space(space_spec, cayley, cayley_n);
            const auto axis = parse_generators(*sp, axis_spec);
            if (axis.size() != 1) throw std::invalid_argument("--axis takes exactly one vector");
            const auto mode = parse_mode(mode_spec, allow_critical);
            std::vector<Generator> gens;
            if (within == "axis")
                gens = axis;
            else if (within != "full")
                gens = parse_generators(*sp, within);
            json j;
            auto run = [&](auto tag) {
                using S = decltype(tag);
                check_mode(*sp, mode);
                auto alg = make_algebra<S>(sp, mode);
                if (within == "full") {
                    j = fusion_json(full_algebra<S>(alg, mode), axis[0], law_name);
                } else {
                    auto all = gens;
                    if (within != "axis") all.push_back(axis[0]);
                    j = fusion_json(close<S>(alg, all, mode), axis[0], law_name);
                }
            };
            if (mode.symbolic)
                run(EtaScalar{});
            else
                run(Rational{});
            out.emit(j);
            return j["violations"].empty() ? 0 : 1;
        }
        if (flip_cmd->parsed()) {
            auto tau = standard_flip(family, k);
            FlipReportOptions opt;
            opt.symbolic = !no_symbolic;
            for (const auto& e : etas) opt.etas.push_back(parse_rational(e));
            json j = flip_report(tau, opt);
            out.emit(j);
            return j["consistent"].get<bool>() ? 0 : 1;
        }
        if (classify_cmd->parsed()) {
            auto sp = parse_space_spec(ambient);
            ClassifyOptions opt;
            opt.eta0 = parse_rational(eta_text);
            opt.allow_critical = allow_critical;
            opt.recertify = !no_recertify;
            if (sample) opt.sampling = Sampling::random(sample, seed);
            auto rep = classify(sp, opt);
            for (const auto& code : rep.unclassified())
                std::cerr << "unclassified diagram (D8/D9 candidate): " << code << "\n";
            if (!csv_path.empty()) write_text(csv_path, rep.to_csv());
            out.emit(rep.to_json());
            return rep.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
