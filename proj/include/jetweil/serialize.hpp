#pragma once

// JSON encodings for the wire formats: rationals as numbers or "p/q"
// strings, cyclotomic values as 4-arrays, scalars as arrays of
// {radicand, tau_power, cyclo} records, jets as {base, order, coeffs},
// operators as term arrays, probe vectors, generator words, module specs,
// and the versioned verification report.

#include <json.hpp>

#include "gauss.hpp"
#include "kashiwara.hpp"
#include "metaplectic.hpp"
#include "report.hpp"
#include "weyl.hpp"

namespace jetweil {

using Json = nlohmann::ordered_json;

// --- rationals ---------------------------------------------------------------

inline Json rational_to_json(const Rational& q) {
    if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(q.get_str());
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("expected a rational (integer or \"p/q\" string)");
}

inline Json integer_to_json(const Integer& n) {
    if (n.fits_slong_p()) return Json(n.get_si());
    return Json(n.get_str());
}

inline Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw ParseError("expected an integer");
}

// --- scalar tower ------------------------------------------------------------

inline Json cyclo_to_json(const CycloRational& c) {
    return Json::array({rational_to_json(c.c[0]), rational_to_json(c.c[1]), rational_to_json(c.c[2]),
                        rational_to_json(c.c[3])});
}

inline CycloRational cyclo_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("cyclotomic value must be a 4-array");
    return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]),
            rational_from_json(j[3])};
}

inline Json scalar_to_json(const Scalar& s) {
    Json arr = Json::array();
    for (const auto& [key, coeff] : s.terms) {
        Json term;
        term["radicand"] = integer_to_json(key.first);
        term["tau_power"] = key.second;
        term["cyclo"] = cyclo_to_json(coeff);
        arr.push_back(std::move(term));
    }
    return arr;
}

inline Scalar scalar_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("scalar must be an array of terms");
    Scalar s;
    for (const auto& term : j) {
        CycloRational c = cyclo_from_json(term.at("cyclo"));
        std::array<Rational, 4>& coords = c.c;
        Scalar piece;
        piece.insert(integer_from_json(term.at("radicand")), term.at("tau_power").get<int>(),
                     CycloRational{coords[0], coords[1], coords[2], coords[3]});
        s += piece;
    }
    return s;
}

inline Json jet_to_json(const JetScalar& j) {
    Json out;
    out["base"] = rational_to_json(j.base);
    out["order"] = j.order();
    Json coeffs = Json::array();
    for (const auto& c : j.coeff) coeffs.push_back(scalar_to_json(c));
    out["coeffs"] = std::move(coeffs);
    return out;
}

inline JetScalar jet_from_json(const Json& j) {
    JetScalar out(rational_from_json(j.at("base")), j.at("order").get<int>());
    const Json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != out.coeff.size())
        throw ParseError("jet coefficient count does not match the order");
    for (size_t m = 0; m < out.coeff.size(); ++m) out.coeff[m] = scalar_from_json(coeffs[m]);
    return out;
}

// --- operators ----------------------------------------------------------------

inline Json weylop_to_json(const WeylOp<Scalar>& op) {
    Json arr = Json::array();
    for (const auto& [key, coeff] : op.terms) {
        Json term;
        term["x_exp"] = key.first;
        term["d_exp"] = key.second;
        term["coeff"] = scalar_to_json(coeff);
        arr.push_back(std::move(term));
    }
    return arr;
}

inline WeylOp<Scalar> weylop_from_json(const Json& j, size_t vars) {
    WeylOp<Scalar> op(vars);
    for (const auto& term : j) {
        MultiIndex xe = term.at("x_exp").get<MultiIndex>();
        MultiIndex de = term.at("d_exp").get<MultiIndex>();
        if (xe.size() != vars || de.size() != vars) throw ParseError("operator exponent arity mismatch");
        op.add_term(xe, de, scalar_from_json(term.at("coeff")));
    }
    return op;
}

// --- gauss vectors --------------------------------------------------------------

inline Json gauss_to_json(const GaussVector& v) {
    Json arr = Json::array();
    for (const auto& t : v.terms) {
        Json term;
        Json poly = Json::array();
        for (const auto& [mono, c] : t.poly) {
            Json p;
            p["exps"] = mono;
            p["coeff"] = jet_to_json(c);
            poly.push_back(std::move(p));
        }
        term["poly"] = std::move(poly);
        Json Q = Json::array();
        for (size_t r = 0; r < v.vars; ++r) {
            Json row = Json::array();
            for (size_t c = 0; c < v.vars; ++c)
                row.push_back(Json::array(
                    {rational_to_json(t.phase.Q.at(r, c).re), rational_to_json(t.phase.Q.at(r, c).im)}));
            Q.push_back(std::move(row));
        }
        Json l = Json::array();
        for (const auto& lj : t.phase.l) l.push_back(jet_to_json(lj));
        term["phase"] = Json{{"Q", std::move(Q)}, {"l", std::move(l)}};
        if (!t.tag.is_zero())
            term["tag"] = Json::array({rational_to_json(t.tag.re), rational_to_json(t.tag.im)});
        arr.push_back(std::move(term));
    }
    return arr;
}

inline GaussVector gauss_from_json(const Json& j, size_t vars, const JetContext& ctx) {
    GaussVector v(vars, ctx);
    for (const auto& term : j) {
        GaussTerm t;
        t.phase.Q = CMatrix(vars, vars);
        const Json& Q = term.at("phase").at("Q");
        if (Q.size() != vars) throw ParseError("phase Q has wrong dimension");
        for (size_t r = 0; r < vars; ++r)
            for (size_t c = 0; c < vars; ++c)
                t.phase.Q.at(r, c) =
                    ComplexRational(rational_from_json(Q[r][c][0]), rational_from_json(Q[r][c][1]));
        for (const auto& lj : term.at("phase").at("l")) {
            JetScalar jet = jet_from_json(lj);
            if (!(jet.base == ctx.s0) || jet.order() != ctx.order)
                throw ParseError("probe jet parameters do not match the requested context");
            t.phase.l.push_back(std::move(jet));
        }
        if (t.phase.l.size() != vars) throw ParseError("phase l has wrong dimension");
        for (const auto& p : term.at("poly")) {
            MultiIndex mono = p.at("exps").get<MultiIndex>();
            if (mono.size() != vars) throw ParseError("polynomial exponent arity mismatch");
            JetScalar c = jet_from_json(p.at("coeff"));
            if (!(c.base == ctx.s0) || c.order() != ctx.order)
                throw ParseError("probe jet parameters do not match the requested context");
            poly_add_term(t.poly, mono, c);
        }
        if (term.contains("tag"))
            t.tag = ComplexRational(rational_from_json(term.at("tag")[0]), rational_from_json(term.at("tag")[1]));
        t.phase.validate();
        v.terms.push_back(std::move(t));
    }
    v.normalize();
    return v;
}

// --- generator words ---------------------------------------------------------

inline Json qmatrix_to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (size_t r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (size_t c = 0; c < m.cols; ++c) row.push_back(rational_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline QMatrix qmatrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    QMatrix m(j.size(), j[0].size());
    for (size_t r = 0; r < m.rows; ++r) {
        if (j[r].size() != m.cols) throw ParseError("ragged matrix rows");
        for (size_t c = 0; c < m.cols; ++c) m.at(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

inline Json word_to_json(const GeneratorWord& w) {
    Json arr = Json::array();
    for (const auto& g : w.gens) {
        if (std::holds_alternative<JGen>(g))
            arr.push_back("J");
        else if (std::holds_alternative<DiagGen>(g))
            arr.push_back(Json{{"diag", qmatrix_to_json(std::get<DiagGen>(g).A)}});
        else
            arr.push_back(Json{{"lower", qmatrix_to_json(std::get<LowerGen>(g).C)}});
    }
    return arr;
}

inline GeneratorWord word_from_json(const Json& j, size_t n) {
    GeneratorWord w(n, {});
    for (const auto& item : j) {
        if (item.is_string() && item.get<std::string>() == "J") {
            w.gens.push_back(JGen{});
        } else if (item.is_object() && item.contains("diag")) {
            w.gens.push_back(DiagGen{qmatrix_from_json(item.at("diag"))});
        } else if (item.is_object() && item.contains("lower")) {
            w.gens.push_back(LowerGen{qmatrix_from_json(item.at("lower"))});
        } else {
            throw ParseError("word items must be \"J\", {\"diag\": ...} or {\"lower\": ...}");
        }
    }
    return w;
}

// --- module specs -------------------------------------------------------------

struct ModuleSpec {
    size_t n = 1;
    size_t dim = 1;
    QMatrix z_matrix;
    unsigned degree_bound = 4;
};

inline Json module_spec_to_json(const ModuleSpec& m) {
    Json j;
    j["n"] = m.n;
    j["dim"] = m.dim;
    j["z_matrix"] = qmatrix_to_json(m.z_matrix);
    j["degree_bound"] = m.degree_bound;
    return j;
}

inline ModuleSpec module_spec_from_json(const Json& j) {
    ModuleSpec m;
    m.n = j.at("n").get<size_t>();
    m.dim = j.at("dim").get<size_t>();
    m.z_matrix = qmatrix_from_json(j.at("z_matrix"));
    if (m.z_matrix.rows != m.dim) throw ParseError("z_matrix size does not match dim");
    m.degree_bound = j.at("degree_bound").get<unsigned>();
    return m;
}

// --- reports -------------------------------------------------------------------

inline Json report_to_json(const Report& rep, Json params = Json::object()) {
    Json j;
    j["schema"] = 1;
    j["suite"] = rep.suite;
    j["exact"] = true;
    if (!params.empty()) j["params"] = std::move(params);
    std::vector<const CheckCase*> sorted;
    sorted.reserve(rep.cases.size());
    for (const auto& c : rep.cases) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(),
              [](const CheckCase* a, const CheckCase* b) { return a->name < b->name; });
    Json cases = Json::array();
    for (const CheckCase* c : sorted) {
        Json cj;
        cj["name"] = c->name;
        cj["status"] = c->status;
        if (c->sign) cj["sign"] = *c->sign;
        if (!c->note.empty()) cj["note"] = c->note;
        if (!c->lhs_hash.empty()) cj["lhs_hash"] = c->lhs_hash;
        if (!c->rhs_hash.empty()) cj["rhs_hash"] = c->rhs_hash;
        if (!c->witness.empty()) cj["witness"] = c->witness;
        cases.push_back(std::move(cj));
    }
    j["cases"] = std::move(cases);
    j["status"] = rep.all_pass() ? "pass" : "fail";
    return j;
}

}  // namespace jetweil
