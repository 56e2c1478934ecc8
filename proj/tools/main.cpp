#include <CLI11.hpp>
#include <excat/report.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace excat;
using nlohmann::ordered_json;

namespace {

Preset parse_preset(const std::string& s) {
    auto colon = s.find(':');
    std::string name = s.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (name == "xquot") {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw SpecError("preset xquot expects p,n (e.g. xquot:2,2)");
        return preset_truncated_poly(std::uint32_t(std::stoul(args.substr(0, comma))),
                                     std::stoul(args.substr(comma + 1)));
    }
    if (name == "xy") {
        if (args.empty()) throw SpecError("preset xy expects a prime (e.g. xy:2)");
        return preset_xy_square(std::uint32_t(std::stoul(args)));
    }
    throw SpecError("unknown preset '" + name + "' (available: xquot:p,n, xy:p)");
}

ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path);
    try {
        return ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw SpecError(path + ": " + e.what());
    }
}

Mat mat_of_json(const PrimeField& f, const ordered_json& j) {
    std::size_t rows = j.size();
    std::size_t cols = rows ? j.at(0).size() : 0;
    Mat m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j.at(r).size() != cols) throw SpecError("ragged matrix in spec file");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = f.add(0, Fe(j.at(r).at(c).get<std::uint64_t>() % f.p()));
    }
    return m;
}

Preset load_spec(const std::string& path) {
    ordered_json j = load_json(path);
    AlgebraSpec sp;
    sp.p = j.at("p").get<std::uint32_t>();
    sp.dim = j.at("dim").get<std::size_t>();
    sp.labels = j.value("labels", std::vector<std::string>{});
    for (auto& c : j.at("unit")) sp.unit.push_back(Fe(c.get<std::uint64_t>() % sp.p));
    for (std::size_t idx = 0; idx < j.at("structure").size(); ++idx) {
        auto& t = j.at("structure").at(idx);
        if (!t.is_array() || t.size() != 4)
            throw SpecError(path + ": structure entry " + std::to_string(idx) +
                            " must be [i, j, k, c]");
        sp.structure.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(),
                                  t.at(2).get<std::size_t>(),
                                  Fe(t.at(3).get<std::uint64_t>() % sp.p));
    }
    sp.commutative = j.value("commutative", false);
    auto alg = std::make_shared<Algebra>(Algebra::validate(sp));
    Preset pr;
    pr.alg = alg;
    for (auto& s : j.at("seeds")) {
        std::vector<Mat> action;
        for (auto& a : s.at("action")) action.push_back(mat_of_json(alg->field(), a));
        pr.seeds.push_back(Module::make(alg, std::move(action)));
        pr.seed_labels.push_back(s.at("label").get<std::string>());
    }
    return pr;
}

std::vector<std::size_t> ids_from_mult_file(const Universe& u, const std::string& path) {
    std::vector<std::size_t> ids;
    for (auto& m : load_json(path)) {
        auto id = u.id_of(m.get<std::vector<std::size_t>>());
        if (!id) throw SpecError(path + ": multiplicity vector outside the universe");
        ids.push_back(*id);
    }
    return ids;
}

struct Session {
    RunConfig cfg;
    UniversePtr u;
    ExactPtr s;

    void build() {
        Preset pr = cfg.spec_path.empty() ? parse_preset(cfg.preset) : load_spec(cfg.spec_path);
        u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, cfg.bound, cfg.cap);
        if (cfg.structure == "abelian") {
            s = ExactStructure::make_abelian(u);
        } else if (cfg.structure == "split") {
            s = ExactStructure::make_split(u);
        } else if (cfg.structure.rfind("induced:", 0) == 0) {
            s = induced_structure(ExactStructure::make_abelian(u),
                                  ids_from_mult_file(*u, cfg.structure.substr(8)));
        } else if (cfg.structure.rfind("file:", 0) == 0) {
            std::vector<Conflation> members;
            for (auto& c : load_json(cfg.structure.substr(5)).at("conflations")) {
                auto xm = u->object(*u->id_of(c.at("x").get<std::vector<std::size_t>>())).mod;
                auto ym = u->object(*u->id_of(c.at("y").get<std::vector<std::size_t>>())).mod;
                auto zm = u->object(*u->id_of(c.at("z").get<std::vector<std::size_t>>())).mod;
                members.push_back(
                    {{xm, ym, mat_of_json(u->algebra().field(), c.at("f"))},
                     {ym, zm, mat_of_json(u->algebra().field(), c.at("g"))}});
            }
            s = ExactStructure::make_explicit(u, std::move(members));
        } else {
            throw SpecError("unknown --structure '" + cfg.structure + "'");
        }
    }

    std::vector<std::size_t> n_ids() const {
        if (cfg.n_select == "zero") return {u->zero_id()};
        if (cfg.n_select == "inj") return is_frobenius(*s).injectives;
        if (cfg.n_select == "proj") return is_frobenius(*s).projectives;
        if (cfg.n_select.rfind("file:", 0) == 0)
            return ids_from_mult_file(*u, cfg.n_select.substr(5));
        throw SpecError("unknown --N '" + cfg.n_select + "'");
    }

    SubcatKind kind() const {
        if (cfg.kind == "thick") return SubcatKind::thick;
        if (cfg.kind == "complete") return SubcatKind::complete;
        throw SpecError("unknown --kind '" + cfg.kind + "'");
    }

    Side side() const {
        if (cfg.side == "ambient") return Side::ambient;
        if (cfg.side == "stable") return Side::quotient;
        throw SpecError("unknown --side '" + cfg.side + "'");
    }

    void write_out(const std::string& name, const std::string& bytes) const {
        if (cfg.out_dir.empty()) {
            std::cout << bytes;
            if (!bytes.empty() && bytes.back() != '\n') std::cout << '\n';
            return;
        }
        std::filesystem::create_directories(cfg.out_dir);
        auto path = std::filesystem::path(cfg.out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << bytes;
        std::cout << "wrote " << path.string() << "\n";
    }

    int emit_report(const std::string& command, const CheckReport& rep) const {
        if (cfg.emit == "md")
            write_out("report.md", report_markdown(cfg, command, rep));
        else
            write_out("report.json", report_json(cfg, command, rep).dump(2) + "\n");
        return exit_code_for(rep);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification workbench for bounded exact module categories"};
    app.require_subcommand(1);

    Session ses;
    RunConfig& cfg = ses.cfg;
    app.add_option("--preset", cfg.preset, "built-in algebra preset, e.g. xquot:2,2 or xy:2");
    app.add_option("--spec", cfg.spec_path, "algebra + seeds JSON file");
    app.add_option("--bound", cfg.bound, "multiplicity bound of the universe");
    app.add_option("--cap", cfg.cap, "enumeration cap");
    app.add_option("--structure", cfg.structure,
                   "split | abelian | induced:<members.json> | file:<conflations.json>");
    app.add_option("--N", cfg.n_select, "inj | proj | zero | file:<members.json>");
    app.add_option("--kind", cfg.kind, "thick | complete");
    app.add_option("--side", cfg.side, "ambient | stable");
    app.add_option("--emit", cfg.emit, "json | dot | md");
    app.add_option("--ext-bound", cfg.ext_bound, "Ext-vanishing window for gorenstein");
    app.add_option("--out", cfg.out_dir, "output directory (default: stdout)");

    auto* c_validate = app.add_subcommand("validate", "parse and validate the algebra and seeds");
    auto* c_axioms = app.add_subcommand("axioms", "verify the exact-category axioms");
    auto* c_frob = app.add_subcommand("frobenius", "projectives, injectives, Frobenius property");
    auto* c_sub = app.add_subcommand("subcats", "enumerate closed subcategory lattices");
    auto* c_corr = app.add_subcommand("correspondence", "verify the subcategory correspondence");
    auto* c_gor = app.add_subcommand("gorenstein", "totally reflexive modules and G(R) theorems");
    for (auto* sub : {c_validate, c_axioms, c_frob, c_sub, c_corr, c_gor}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        ses.build();
        if (c_validate->parsed()) {
            CheckReport rep;
            rep.add("algebra_and_seeds", true,
                    std::to_string(ses.u->size()) + " universe objects over a dim-" +
                        std::to_string(ses.u->algebra().dim()) + " algebra");
            return ses.emit_report("validate", rep);
        }
        if (c_axioms->parsed()) return ses.emit_report("axioms", verify_exact_axioms(*ses.s));
        if (c_frob->parsed()) {
            auto fr = is_frobenius(*ses.s);
            CheckReport rep;
            rep.add("enough_projectives", fr.enough_proj.ok);
            rep.add("enough_injectives", fr.enough_inj.ok);
            rep.add("projectives_equal_injectives", fr.projectives == fr.injectives);
            rep.add("frobenius", fr.frobenius);
            auto labels = [&](const std::vector<std::size_t>& ids) {
                std::string out;
                for (auto i : ids) out += (out.empty() ? "" : ", ") + ses.u->object(i).label;
                return out;
            };
            rep.notes.push_back("projectives: " + labels(fr.projectives));
            rep.notes.push_back("injectives: " + labels(fr.injectives));
            return ses.emit_report("frobenius", rep);
        }
        if (c_sub->parsed()) {
            auto q = QuotientContext::make(ses.s, ses.n_ids());
            auto sc = SubcatContext::make(q);
            auto lat = sc->enumerate_closed(ses.kind(), ses.side());
            if (cfg.emit == "dot")
                ses.write_out("lattice.dot", sc->to_dot(lat));
            else if (cfg.emit == "md") {
                std::ostringstream md;
                md << "# excat subcats\n\n" << lat.sets.size() << " closed sets, "
                   << lat.hasse.size() << " covering pairs\n";
                ses.write_out("lattice.md", md.str());
            } else
                ses.write_out("lattice.json", lattice_json(*sc, lat).dump(2) + "\n");
            return lat.truncated || lat.inconclusive ? 3 : 0;
        }
        if (c_corr->parsed()) {
            auto q = QuotientContext::make(ses.s, ses.n_ids());
            auto sc = SubcatContext::make(q);
            return ses.emit_report("correspondence", sc->verify_correspondence(ses.kind()));
        }
        if (c_gor->parsed())
            return ses.emit_report("gorenstein", verify_gr_theorems(ses.u, cfg.ext_bound));
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const UndecidableError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
