#ifndef ARRCOVER_CLI_HPP
#define ARRCOVER_CLI_HPP

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arrangement.hpp"
#include "covers.hpp"
#include "diagrams.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "invariants.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "properties.hpp"

namespace arrcover::cli {

enum class Format { text, json, dot };

struct RunConfig
{
    std::string command;
    std::string input;
    std::optional<std::string> deck;
    int radius = 2;
    Format format = Format::text;
    bool exhaustive = false;
};

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

namespace detail {

using json::Json;

struct Context
{
    std::shared_ptr<const FacePoset> faces;
    std::shared_ptr<const OrientedSystem> gamma;
};

inline Context load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read " + path);
    auto faces = std::make_shared<const FacePoset>(enumerate_faces(parse_arrangement(in)));
    return {faces, std::make_shared<const OrientedSystem>(gamma_of(faces))};
}

inline void require_valid(const Context& ctx, const DeckReport& rep)
{
    if (rep.ok)
        return;
    const auto& g = ctx.gamma->graph();
    throw VerificationError("deck labeling breaks the relation " + to_string(g, rep.violations.front().first) + " ~ " +
                            to_string(g, rep.violations.front().second));
}

inline CoverGraph cover_for(const Context& ctx, const RunConfig& cfg)
{
    if (!cfg.deck)
        return identity_cover(ctx.gamma);
    const auto deck = deck_from_spec(*ctx.gamma, *cfg.deck);
    require_valid(ctx, validate_deck(*ctx.gamma, deck));
    return build_cover(ctx.gamma, deck);
}

inline std::string betti_text(const std::vector<long long>& b)
{
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i)
        s += (i ? " " : "") + std::to_string(b[i]);
    return s;
}

inline std::string complex_text(const std::string& name, const SimplicialComplex& k)
{
    std::ostringstream out;
    out << name << ": " << k.vertex_count() << " vertices, " << k.maximal_simplices().size()
        << " maximal simplices, dim " << k.dimension() << ", chi " << euler_characteristic(k) << "\n";
    return out.str();
}

inline std::string poset_dot(const FinitePoset& p, const std::string& name)
{
    std::ostringstream out;
    out << "digraph " << name << " {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        out << "  n" << i << " [label=\"" << p.label(i) << "\"];\n";
    for (const auto& [u, l] : p.covers())
        out << "  n" << l << " -> n" << u << ";\n";
    out << "}\n";
    return out.str();
}

inline int no_dot(const RunConfig& cfg, std::ostream& err)
{
    err << "error: --format dot is not available for '" << cfg.command << "'\n";
    return exit_input;
}

inline int cmd_faces(const Context& ctx, const RunConfig& cfg, std::ostream& out)
{
    const auto& f = *ctx.faces;
    if (cfg.format == Format::json) {
        out << json::faces(f).dump(2) << "\n";
        return exit_ok;
    }
    if (cfg.format == Format::dot) {
        out << poset_dot(f.poset(), "faces");
        return exit_ok;
    }
    out << "faces: " << f.size() << " (chambers " << f.chambers().size() << ")\n";
    for (const auto& face : f.faces())
        out << (face.str().empty() ? "()" : face.str()) << " codim " << face.codim << (face.is_chamber() ? " chamber" : "")
            << "\n";
    for (const auto& [u, l] : f.poset().covers())
        out << "cover " << f[u].str() << " > " << f[l].str() << "\n";
    return exit_ok;
}

inline int cmd_salvetti(const Context& ctx, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto direct = salvetti_direct(*ctx.faces);
    const auto w = base_model(*ctx.gamma);
    const auto iso = iso_check(*w.complex, direct);
    if (cfg.format == Format::dot)
        return no_dot(cfg, err);
    if (cfg.format == Format::json) {
        Json witness = nullptr;
        if (iso.witness) {
            const auto& k = iso.witness_in_first ? *w.complex : direct;
            Json labels = Json::array();
            for (int v : *iso.witness)
                labels.push_back(k.vertex(v));
            witness = labels;
        }
        out << Json{{"salvetti_direct", json::complex(direct)},
                    {"plim_complex", json::complex(*w.complex)},
                    {"iso_check", {{"ok", iso.ok}, {"witness", witness}}}}
                   .dump(2)
            << "\n";
    } else {
        out << complex_text("salvetti_direct", direct) << complex_text("plim_complex", *w.complex)
            << "iso_check: " << (iso.ok ? "true" : "false") << "\n";
    }
    return iso.ok ? exit_ok : exit_failed;
}

inline int cmd_cover(const Context& ctx, const RunConfig& cfg, std::ostream& out)
{
    std::optional<DeckReport> report;
    CoverGraph theta = [&] {
        if (!cfg.deck)
            return identity_cover(ctx.gamma);
        const auto deck = deck_from_spec(*ctx.gamma, *cfg.deck);
        report = validate_deck(*ctx.gamma, deck, cfg.exhaustive);
        require_valid(ctx, *report);
        return build_cover(ctx.gamma, deck);
    }();
    if (cfg.format == Format::dot) {
        out << theta.to_dot();
        return exit_ok;
    }
    if (cfg.format == Format::json) {
        Json j = json::cover(theta);
        if (report)
            j["validation"] = {{"ok", report->ok}, {"pairs_checked", report->pairs_checked}};
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "vertices: " << theta.size() << "\nedges: " << theta.graph().edge_count() << "\ncomponents: "
        << theta.component_count() << "\nfibers:";
    for (int c = 0; c < theta.component_count(); ++c)
        out << " " << theta.fiber_size(c);
    out << "\n";
    if (report)
        out << "pairs_checked: " << report->pairs_checked << "\n";
    return exit_ok;
}

inline int cmd_model(const Context& ctx, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const CoverGraph theta = cover_for(ctx, cfg);
    const CoverModel m = build_model(theta);
    const auto rep = verify_covering(m.projection);
    if (cfg.format == Format::dot)
        return no_dot(cfg, err);
    if (cfg.format == Format::json) {
        out << Json{{"W_rho", json::complex(*m.total.complex)},
                    {"W", json::complex(*m.base.complex)},
                    {"Lambda_rho", m.projection.vertex_map()},
                    {"covering", json::covering(rep, *m.total.complex)}}
                   .dump(2)
            << "\n";
    } else {
        out << complex_text("W_rho", *m.total.complex) << complex_text("W", *m.base.complex) << "covering: "
            << (rep.ok ? "ok" : "FAILED") << "\nfiber: " << rep.fiber << "\ncomponents: " << rep.components
            << "\nstars_checked: " << rep.stars_checked << "\n";
        if (rep.witness)
            out << "witness: " << rep.witness->reason << "\n";
    }
    return rep.ok ? exit_ok : exit_failed;
}

inline int cmd_universal(const Context& ctx, const RunConfig& cfg, std::ostream& out)
{
    const CoverGraph ball = universal_cover_ball(ctx.gamma, cfg.radius);
    const CoverModel m = build_model(ball);
    const auto betti = betti_numbers(*m.total.complex);
    if (cfg.format == Format::dot) {
        out << ball.to_dot();
        return exit_ok;
    }
    if (cfg.format == Format::json) {
        Json j = json::graph(ball.graph());
        j["radius"] = cfg.radius;
        j["exact"] = ball.exact();
        j["plim"] = json::poset(m.total.plim.poset);
        j["complex"] = json::complex(*m.total.complex);
        j["betti"] = betti;
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "radius: " << cfg.radius << "\nexact: " << (ball.exact() ? "true" : "false") << "\nvertices:";
    for (const auto& l : ball.graph().labels())
        out << " " << l;
    out << "\nedges: " << ball.graph().edge_count() << "\nplim: " << m.total.size() << " elements\n"
        << "betti: " << betti_text(betti) << "\n";
    return exit_ok;
}

inline int cmd_falk(const Context& ctx, const RunConfig& cfg, std::ostream& out)
{
    const Plim e = plim(diagram_falk(*ctx.faces));
    const auto be = trimmed(betti_numbers(order_complex(e.poset)));
    const auto bid = trimmed(betti_numbers(*base_model(*ctx.gamma).complex));
    const bool equal = be == bid;
    if (cfg.format == Format::dot)
        out << poset_dot(e.poset, "falk");
    else if (cfg.format == Format::json)
        out << Json{{"plim", json::poset(e.poset)}, {"betti_falk", be}, {"betti_id", bid}, {"equal", equal}}.dump(2)
            << "\n";
    else
        out << "plim: " << e.poset.size() << " elements\nbetti_falk: " << betti_text(be) << "\nbetti_id: "
            << betti_text(bid) << "\nequal: " << (equal ? "true" : "false") << "\n";
    return equal ? exit_ok : exit_failed;
}

inline int cmd_verify(const Context& ctx, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    CheckList checks;
    check_faces(*ctx.faces, cfg.exhaustive, checks);
    check_composition(*ctx.faces, checks);
    check_paths(*ctx.gamma, cfg.exhaustive, checks);
    check_models(*ctx.gamma, checks);
    const auto deck = deck_from_spec(*ctx.gamma, cfg.deck.value_or("winding:1"));
    if (validate_deck(*ctx.gamma, deck).ok)
        check_cover(build_cover(ctx.gamma, deck), deck, cfg.exhaustive, checks);
    else {
        auto& c = checks.open("cover: deck labeling respects the generating relations");
        const auto rep = validate_deck(*ctx.gamma, deck);
        const auto& g = ctx.gamma->graph();
        CheckList::expect(c, false, to_string(g, rep.violations.front().first) + " | " +
                                        to_string(g, rep.violations.front().second));
    }
    if (cfg.format == Format::dot)
        return no_dot(cfg, err);
    if (cfg.format == Format::json) {
        Json list = Json::array();
        for (const auto& c : checks.checks())
            list.push_back({{"name", c.name}, {"ok", c.ok}, {"witness", c.ok ? Json(nullptr) : Json(c.witness)}});
        out << Json{{"ok", checks.ok()}, {"checks", list}}.dump(2) << "\n";
    } else {
        for (const auto& c : checks.checks()) {
            out << (c.ok ? "ok   " : "FAIL ") << c.name;
            if (!c.ok)
                out << ": " << c.witness;
            out << "\n";
        }
    }
    return checks.ok() ? exit_ok : exit_failed;
}

inline int cmd_invariants(const Context& ctx, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const CoverGraph theta = cover_for(ctx, cfg);
    const CoverModel m = build_model(theta);
    const auto cells = cw_cells(m, *ctx.faces);
    const auto pres = pi1_presentation(m, theta, cells);
    const auto ab = abelianization(pres);
    const auto h = homology(*m.total.complex);
    const long long b1 = h.betti.size() > 1 ? h.betti[1] : 0;
    const bool consistent = ab.free_rank == b1 && ab.torsion == h.h1_invariant_factors;
    if (cfg.format == Format::dot)
        return no_dot(cfg, err);
    if (cfg.format == Format::json) {
        Json j{{"euler", h.euler}};
        j["homology"] = json::homology(h);
        j["presentation"] = json::presentation(pres);
        j["abelianization"] = json::abelian(ab);
        j["consistent"] = consistent;
        out << j.dump(2) << "\n";
    } else {
        out << "chi: " << h.euler << "\nbetti: " << betti_text(h.betti) << "\nh1_factors:";
        for (const auto& f : h.h1_invariant_factors)
            out << " " << f;
        out << "\n" << to_text(pres) << "abelianization: free rank " << ab.free_rank << ", torsion:";
        if (ab.torsion.empty())
            out << " none";
        for (const auto& f : ab.torsion)
            out << " " << f;
        out << "\nconsistent: " << (consistent ? "true" : "false") << "\n";
    }
    return consistent ? exit_ok : exit_failed;
}

}  // namespace detail

/// Dispatch one command; everything is written to `out` in one piece.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::ostringstream buffer;
    int code = exit_ok;
    try {
        const auto ctx = detail::load(cfg.input);
        if (cfg.command == "faces")
            code = detail::cmd_faces(ctx, cfg, buffer);
        else if (cfg.command == "salvetti")
            code = detail::cmd_salvetti(ctx, cfg, buffer, err);
        else if (cfg.command == "cover")
            code = detail::cmd_cover(ctx, cfg, buffer);
        else if (cfg.command == "model")
            code = detail::cmd_model(ctx, cfg, buffer, err);
        else if (cfg.command == "universal")
            code = detail::cmd_universal(ctx, cfg, buffer);
        else if (cfg.command == "falk")
            code = detail::cmd_falk(ctx, cfg, buffer);
        else if (cfg.command == "verify")
            code = detail::cmd_verify(ctx, cfg, buffer, err);
        else if (cfg.command == "invariants")
            code = detail::cmd_invariants(ctx, cfg, buffer, err);
        else {
            err << "error: unknown command '" << cfg.command << "'\n";
            return exit_input;
        }
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return exit_failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    out << buffer.str();
    return code;
}

/// Parse argv-style arguments (without the program name) and run.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Salvetti complexes, covers and poset-limit models of hyperplane arrangements", "arrcover"};
    RunConfig cfg;
    std::string format = "text";
    app.add_option("command", cfg.command, "faces|salvetti|cover|model|universal|falk|verify|invariants")->required();
    app.add_option("input", cfg.input, "arrangement file")->required();
    app.add_option("--deck", cfg.deck, "winding:<k>, crossing:<k> or a deck file");
    app.add_option("--radius", cfg.radius, "ball radius for 'universal'")->check(CLI::NonNegativeNumber);
    app.add_option("--format", format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_flag("--exhaustive", cfg.exhaustive, "enable brute-force oracles");
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    cfg.format = format == "json" ? Format::json : format == "dot" ? Format::dot : Format::text;
    return run(cfg, out, err);
}

}  // namespace arrcover::cli

#endif
