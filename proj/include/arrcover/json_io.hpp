#ifndef ARRCOVER_JSON_IO_HPP
#define ARRCOVER_JSON_IO_HPP

#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrangement.hpp"
#include "complex.hpp"
#include "covers.hpp"
#include "homology.hpp"
#include "invariants.hpp"
#include "model.hpp"
#include "poset.hpp"

namespace arrcover::json {

using Json = nlohmann::ordered_json;

inline Json big(const BigInt& x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(x));
    return Json(x.str());
}

inline Json poset(const FinitePoset& p)
{
    Json covers = Json::array();
    for (const auto& [u, l] : p.covers())
        covers.push_back({u, l});
    return Json{{"elements", p.labels()}, {"cover_relations", covers}};
}

inline Json complex(const SimplicialComplex& k)
{
    return Json{{"vertices", k.vertices()}, {"maximal_simplices", k.maximal_simplices()}};
}

inline Json faces(const FacePoset& f)
{
    Json list = Json::array();
    for (const auto& face : f.faces())
        list.push_back({{"signs", face.str()}, {"codim", face.codim}, {"chamber", face.is_chamber()}});
    return Json{{"dim", f.arrangement().dim()},
                {"hyperplanes", f.arrangement().size()},
                {"faces", list},
                {"poset", poset(f.poset())}};
}

inline Json graph(const OrientedGraph& g)
{
    Json edges = Json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.source, e.target});
    return Json{{"vertices", g.labels()}, {"edges", edges}};
}

inline Json cover(const CoverGraph& theta)
{
    Json j = graph(theta.graph());
    j["projection"] = theta.projection();
    j["components"] = theta.component_count();
    std::vector<int> fibers;
    for (int c = 0; c < theta.component_count(); ++c)
        fibers.push_back(theta.fiber_size(c));
    j["fibers"] = fibers;
    return j;
}

inline Json covering(const CoveringReport& r, const SimplicialComplex& source)
{
    Json witness = nullptr;
    if (r.witness)
        witness = Json{{"vertex", r.witness->vertex >= 0 ? Json(source.vertex(r.witness->vertex)) : Json(nullptr)},
                       {"reason", r.witness->reason}};
    return Json{{"fiber", r.fiber},
                {"components", r.components},
                {"stars_checked", r.stars_checked},
                {"ok", r.ok},
                {"witness", witness}};
}

inline Json homology(const HomologySummary& h)
{
    Json factors = Json::array();
    for (const auto& f : h.h1_invariant_factors)
        factors.push_back(big(f));
    return Json{{"betti", h.betti}, {"h1_factors", factors}};
}

inline Json presentation(const GroupPresentation& p)
{
    Json rels = Json::array();
    for (const auto& r : p.relators)
        rels.push_back(word_to_string(p, r));
    return Json{{"generators", p.generators}, {"relators", rels}};
}

inline Json abelian(const Abelianization& a)
{
    Json t = Json::array();
    for (const auto& f : a.torsion)
        t.push_back(big(f));
    return Json{{"free_rank", a.free_rank}, {"torsion", t}};
}

}  // namespace arrcover::json

#endif
