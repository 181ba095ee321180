#include <mmpfloer/json_io.hpp>

#include <stdexcept>

namespace mmpfloer::io {

namespace {
namespace nv = mmpfloer::novikov;
}

json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
    return parse_rational(j.get<std::string>());
}

json series_to_json(const nv::Series& s) {
    json terms = json::array();
    for (const auto& t : s.terms)
        terms.push_back({{"exp", rational_to_string(t.exp)},
                         {"re", t.coef.real()},
                         {"im", t.coef.imag()}});
    return {{"terms", terms}, {"trunc", rational_to_string(s.trunc)}};
}

nv::Series series_from_json(const json& j) {
    std::vector<nv::Series::Term> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({rational_from_json(t.at("exp")),
                         {t.at("re").get<double>(), t.at("im").get<double>()}});
    return nv::make_series<std::complex<double>>(std::move(terms),
                                                 rational_from_json(j.at("trunc")));
}

json polytope_to_json(const polytope::Polytope& P) {
    json normals = json::array();
    for (const auto& n : P.normals) normals.push_back(n);
    json constants = json::array();
    for (const auto& c : P.constants) constants.push_back(rational_to_string(c));
    return {{"dim", P.dim}, {"normals", normals}, {"constants", constants}};
}

polytope::Polytope polytope_from_json(const json& j) {
    size_t dim = j.at("dim").get<size_t>();
    std::vector<ZVector> normals;
    for (const auto& n : j.at("normals")) normals.push_back(n.get<ZVector>());
    QVector constants;
    for (const auto& c : j.at("constants")) constants.push_back(rational_from_json(c));
    return polytope::from_facets(dim, std::move(normals), std::move(constants));
}

namespace {

json qvector_to_json(const QVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_to_string(x));
    return a;
}

QVector qvector_from_json(const json& j) {
    QVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

}  // namespace

json geometry_to_json(const mmp::Geometry& g) {
    if (const auto* t = std::get_if<mmp::ToricGeometry>(&g))
        return {{"type", "toric"}, {"polytope", polytope_to_json(t->poly)}};
    if (const auto* p = std::get_if<mmp::PolygonGeometry>(&g))
        return {{"type", "polygon"}, {"lengths", qvector_to_json(p->lengths)}};
    if (const auto* f = std::get_if<mmp::FlatGeometry>(&g))
        return {{"type", "flat"}, {"labels", qvector_to_json(f->labels)}};
    const auto& fl = std::get<mmp::FlagGeometry>(g);
    return {{"type", "flag"}, {"weight", qvector_to_json(fl.weight)}};
}

mmp::Geometry geometry_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "toric") return mmp::ToricGeometry{polytope_from_json(j.at("polytope"))};
    if (type == "polygon") return mmp::PolygonGeometry{qvector_from_json(j.at("lengths"))};
    if (type == "flat") return mmp::FlatGeometry{qvector_from_json(j.at("labels"))};
    if (type == "flag") return mmp::FlagGeometry{qvector_from_json(j.at("weight"))};
    throw std::invalid_argument("unknown geometry type: " + type);
}

namespace {

json witness_to_json(const mmp::Witness& w) {
    if (const auto* t = std::get_if<mmp::ToricWitness>(&w))
        return {{"type", "toric"}, {"point", qvector_to_json(t->point)}, {"active", t->active}};
    if (const auto* p = std::get_if<mmp::PolygonWitness>(&w))
        return {{"type", "polygon"},
                {"signs", p->signs},
                {"plus", qvector_to_json(p->plus_lengths)},
                {"minus", qvector_to_json(p->minus_lengths)}};
    if (const auto* f = std::get_if<mmp::FlatWitness>(&w))
        return {{"type", "flat"},
                {"subset", f->subset},
                {"h", rational_to_string(f->half_integer)}};
    const auto& fl = std::get<mmp::FlagWitness>(w);
    return {{"type", "flag"}, {"walls", fl.merged_walls}, {"fiber", fl.fiber}};
}

mmp::Witness witness_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "toric")
        return mmp::ToricWitness{qvector_from_json(j.at("point")),
                                 j.at("active").get<std::vector<size_t>>()};
    if (type == "polygon")
        return mmp::PolygonWitness{j.at("signs").get<std::vector<int>>(),
                                   qvector_from_json(j.at("plus")),
                                   qvector_from_json(j.at("minus"))};
    if (type == "flat")
        return mmp::FlatWitness{j.at("subset").get<std::vector<int>>(),
                                rational_from_json(j.at("h"))};
    if (type == "flag")
        return mmp::FlagWitness{j.at("walls").get<std::vector<size_t>>(),
                                j.at("fiber").get<std::string>()};
    throw std::invalid_argument("unknown witness type: " + type);
}

json lagrangian_to_json(const mmp::RegularLagrangian& rl) {
    if (const auto* f = std::get_if<mmp::ToricFiberReport>(&rl))
        return {{"type", "toric_fiber"},
                {"point", qvector_to_json(f->point)},
                {"regular", f->regular},
                {"terminal", f->terminal},
                {"note", f->note}};
    const auto& l = std::get<mmp::RegularLabels>(rl);
    return {{"type", "labels"},
            {"diagonals", qvector_to_json(l.diagonals)},
            {"looseness", rational_to_string(l.looseness)},
            {"ordering_ok", l.ordering_ok},
            {"first_fibration_time", rational_to_string(l.first_fibration_time)}};
}

mmp::RegularLagrangian lagrangian_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "toric_fiber")
        return mmp::ToricFiberReport{qvector_from_json(j.at("point")),
                                     j.at("regular").get<bool>(), j.at("terminal").get<bool>(),
                                     j.at("note").get<std::string>()};
    if (type == "labels")
        return mmp::RegularLabels{qvector_from_json(j.at("diagonals")),
                                  rational_from_json(j.at("looseness")),
                                  j.at("ordering_ok").get<bool>(),
                                  rational_from_json(j.at("first_fibration_time"))};
    throw std::invalid_argument("unknown regular-Lagrangian type: " + type);
}

}  // namespace

json transition_to_json(const mmp::Transition& t) {
    json witnesses = json::array();
    for (const auto& w : t.witnesses) witnesses.push_back(witness_to_json(w));
    json j = {{"time", rational_to_string(t.time)},
              {"kind", mmp::kind_to_string(t.kind)},
              {"witness", witnesses},
              {"before", t.before_desc},
              {"after", t.after_desc}};
    if (t.multiplicity) j["multiplicity"] = *t.multiplicity;
    if (t.regular_lagrangian) j["regular_lagrangian"] = lagrangian_to_json(*t.regular_lagrangian);
    return j;
}

mmp::Transition transition_from_json(const json& j) {
    mmp::Transition t;
    t.time = rational_from_json(j.at("time"));
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "Flip")
        t.kind = mmp::TransitionKind::Flip;
    else if (kind == "DivisorialContraction")
        t.kind = mmp::TransitionKind::DivisorialContraction;
    else if (kind == "MoriFibration")
        t.kind = mmp::TransitionKind::MoriFibration;
    else if (kind == "Empty")
        t.kind = mmp::TransitionKind::Empty;
    else
        throw std::invalid_argument("unknown transition kind: " + kind);
    for (const auto& w : j.at("witness")) t.witnesses.push_back(witness_from_json(w));
    if (j.contains("multiplicity")) t.multiplicity = j.at("multiplicity").get<long>();
    if (j.contains("regular_lagrangian"))
        t.regular_lagrangian = lagrangian_from_json(j.at("regular_lagrangian"));
    t.before_desc = j.at("before").get<std::string>();
    t.after_desc = j.at("after").get<std::string>();
    return t;
}

json running_to_json(const mmp::MmpRunning& r) {
    json transitions = json::array();
    for (const auto& t : r.transitions) transitions.push_back(transition_to_json(t));
    return {{"geometry", r.geometry_desc},
            {"transitions", transitions},
            {"terminal", r.terminal},
            {"overall", r.overall_desc}};
}

mmp::MmpRunning running_from_json(const json& j) {
    mmp::MmpRunning r;
    r.geometry_desc = j.at("geometry").get<std::string>();
    for (const auto& t : j.at("transitions")) r.transitions.push_back(transition_from_json(t));
    r.terminal = j.at("terminal").get<std::string>();
    r.overall_desc = j.at("overall").get<std::string>();
    return r;
}

json potential_to_json(const potential::LaurentPotential& W) {
    json terms = json::array();
    for (const auto& t : W.terms)
        terms.push_back({{"area", rational_to_string(t.area)},
                         {"exponent", t.exponent},
                         {"re", t.coef.real()},
                         {"im", t.coef.imag()}});
    return {{"dim", W.dim}, {"terms", terms}, {"trunc", rational_to_string(W.trunc)}};
}

potential::LaurentPotential potential_from_json(const json& j) {
    std::vector<potential::PotentialTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({rational_from_json(t.at("area")), t.at("exponent").get<ZVector>(),
                         {t.at("re").get<double>(), t.at("im").get<double>()}});
    return potential::make_potential(j.at("dim").get<size_t>(), std::move(terms),
                                     rational_from_json(j.at("trunc")));
}

json local_system_to_json(const nv::LocalSystem& y) {
    json values = json::array();
    for (const auto& v : y.values) values.push_back(series_to_json(v));
    return {{"values", values}};
}

nv::LocalSystem local_system_from_json(const json& j) {
    nv::LocalSystem y;
    for (const auto& v : j.at("values")) y.values.push_back(series_from_json(v));
    y.validate();
    return y;
}

json certificate_to_json(const potential::HFCertificate& c) {
    json j = {{"granted", c.granted},
              {"reason", c.reason},
              {"potential_value", series_to_json(c.potential_value)},
              {"residual_order", rational_to_string(c.residual_order)},
              {"rank", c.rank}};
    auto v = nv::valuation(c.potential_value);
    j["potential_valuation"] = v ? json(rational_to_string(*v)) : json(nullptr);
    return j;
}

json algebra_to_json(const ainfty::CurvedAInftyAlgebra& A) {
    json gens = json::array();
    for (const auto& g : A.basis) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    json maps = json::array();
    for (const auto& [key, out] : A.maps) {
        for (size_t i = 0; i < out.size(); ++i) {
            if (out[i].is_zero()) continue;
            maps.push_back({{"arity", key.size()},
                            {"in", key},
                            {"out", i},
                            {"coef", series_to_json(out[i])}});
        }
    }
    json j = {{"grading_modulus", A.grading_modulus},
              {"generators", gens},
              {"arity_cutoff", A.arity_cutoff},
              {"energy_cutoff", rational_to_string(A.energy_cutoff)},
              {"maps", maps}};
    if (A.unit_index) j["unit"] = *A.unit_index;
    return j;
}

ainfty::CurvedAInftyAlgebra algebra_from_json(const json& j) {
    std::vector<ainfty::Generator> basis;
    for (const auto& g : j.at("generators"))
        basis.push_back({g.at("name").get<std::string>(), g.at("degree").get<long>()});
    Rational E = rational_from_json(j.at("energy_cutoff"));
    std::map<std::vector<size_t>, ainfty::Element> maps;
    for (const auto& entry : j.at("maps")) {
        std::vector<size_t> key = entry.at("in").get<std::vector<size_t>>();
        if (entry.contains("arity") && entry.at("arity").get<size_t>() != key.size())
            throw std::invalid_argument("algebra map entry: arity does not match input list");
        auto it = maps.find(key);
        if (it == maps.end())
            it = maps.emplace(key, ainfty::Element(basis.size(),
                                                   novikov::zero<std::complex<double>>(E)))
                     .first;
        size_t out = entry.at("out").get<size_t>();
        if (out >= basis.size())
            throw std::invalid_argument("algebra map entry: output index out of range");
        it->second[out] = novikov::add(it->second[out], series_from_json(entry.at("coef")));
    }
    std::optional<size_t> unit;
    if (j.contains("unit") && !j.at("unit").is_null()) unit = j.at("unit").get<size_t>();
    return ainfty::make_algebra(j.at("grading_modulus").get<long>(), std::move(basis), unit,
                                j.at("arity_cutoff").get<size_t>(), std::move(E),
                                std::move(maps));
}

}  // namespace mmpfloer::io
