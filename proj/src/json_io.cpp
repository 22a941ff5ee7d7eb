#include "ach/json_io.hpp"

namespace ach {

namespace {

Json rational_pair(const BigRational& r) {
    return Json::array({r.num().str(), r.den().str()});
}

BigRational rational_from_pair(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw MathError("bad rational in JSON");
    BigInt num(j[0].get<std::string>());
    BigInt den(j[1].get<std::string>());
    return BigRational(num, den);
}

const char* channel_name(Channel ch) {
    switch (ch) {
        case Channel::Scalar: return "scalar";
        case Channel::Vector: return "vector";
        case Channel::Sym2: return "sym2";
    }
    throw MathError("bad channel");
}

Channel channel_from_name(const std::string& s) {
    if (s == "scalar") return Channel::Scalar;
    if (s == "vector") return Channel::Vector;
    if (s == "sym2") return Channel::Sym2;
    throw MathError("unknown channel: " + s);
}

}  // namespace

Json to_json(const GaussianRational& v) {
    return Json{{"re", rational_pair(v.re())}, {"im", rational_pair(v.im())}};
}

GaussianRational gaussian_from_json(const Json& j) {
    return GaussianRational(rational_from_pair(j.at("re")), rational_from_pair(j.at("im")));
}

Json to_json(const OpPoly& p, int n) {
    Json terms = Json::array();
    for (const auto& [k, c] : p.terms()) {
        terms.push_back(Json{{"db", k.first}, {"t", k.second}, {"coeff", to_json(c)}});
    }
    return Json{{"n", n}, {"terms", terms}};
}

OpPoly op_poly_from_json(const Json& j) {
    OpPoly p;
    for (const auto& t : j.at("terms")) {
        p.add_term(t.at("db").get<unsigned>(), t.at("t").get<unsigned>(),
                   gaussian_from_json(t.at("coeff")));
    }
    return p;
}

Json to_json(const NcNormal& op) {
    Json terms = Json::array();
    for (const auto& [s, p] : op.terms()) {
        for (const auto& [k, c] : p.terms()) {
            terms.push_back(Json{{"shape", shape_tag(s)},
                                 {"db", k.first},
                                 {"t", k.second},
                                 {"coeff", to_json(c)}});
        }
    }
    return Json{{"n", op.dim()}, {"channel", channel_name(op.channel())}, {"terms", terms}};
}

NcNormal nc_normal_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    Channel ch = channel_from_name(j.at("channel").get<std::string>());
    NcSource src = NcSource::PsiDeformation;
    for (const auto& t : j.at("terms")) {
        if (shape_source(shape_from_tag(t.at("shape").get<std::string>())) ==
            NcSource::ScalarFunction)
            src = NcSource::ScalarFunction;
    }
    NcNormal op(n, ch, src);
    for (const auto& t : j.at("terms")) {
        Shape s = shape_from_tag(t.at("shape").get<std::string>());
        op.add(s, OpPoly::term(t.at("db").get<unsigned>(), t.at("t").get<unsigned>(),
                               gaussian_from_json(t.at("coeff"))));
    }
    return op;
}

Json to_json(const HeisPoly& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        terms.push_back(Json{{"ze", m.ze}, {"zbe", m.zbe}, {"te", m.te}, {"coeff", to_json(c)}});
    }
    return Json{{"n", p.dim()}, {"terms", terms}};
}

HeisPoly heis_poly_from_json(const Json& j, int n) {
    HeisPoly p(n);
    for (const auto& t : j.at("terms")) {
        HeisMono m(n);
        auto ze = t.at("ze").get<std::vector<std::uint32_t>>();
        auto zbe = t.at("zbe").get<std::vector<std::uint32_t>>();
        if (static_cast<int>(ze.size()) != n || static_cast<int>(zbe.size()) != n)
            throw MathError("monomial dimension mismatch in JSON");
        m.ze = std::move(ze);
        m.zbe = std::move(zbe);
        m.te = t.at("te").get<std::uint32_t>();
        p.add_term(m, gaussian_from_json(t.at("coeff")));
    }
    return p;
}

Json to_json(const RhoSeries<HeisPoly>& s) {
    Json terms = Json::array();
    for (int j = 0; j <= s.max_order(); ++j) {
        if (!s.a(j).is_zero()) terms.push_back(Json{{"j", j}, {"log", false}, {"poly", to_json(s.a(j))}});
        if (!s.b(j).is_zero()) terms.push_back(Json{{"j", j}, {"log", true}, {"poly", to_json(s.b(j))}});
    }
    return Json{{"max_order", s.max_order()}, {"terms", terms}};
}

Json to_json(const RhoSeries<GaussianRational>& s) {
    Json terms = Json::array();
    for (int j = 0; j <= s.max_order(); ++j) {
        if (!s.a(j).is_zero())
            terms.push_back(Json{{"j", j}, {"log", false}, {"coeff", to_json(s.a(j))}});
        if (!s.b(j).is_zero())
            terms.push_back(Json{{"j", j}, {"log", true}, {"coeff", to_json(s.b(j))}});
    }
    return Json{{"max_order", s.max_order()}, {"terms", terms}};
}

Json to_json(const FrameTensor& t) {
    FrameIndexing ix(t.dim());
    Json comps = Json::object();
    for (const auto& idx : t.tuples()) {
        const auto& series = t.at(idx);
        if (series.is_zero()) continue;
        std::string key;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) key += ",";
            key += ix.name(idx[i]);
        }
        comps[key] = to_json(series);
    }
    return Json{{"n", t.dim()},
                {"valence", t.valence()},
                {"max_order", t.max_order()},
                {"components", comps}};
}

Json to_json(const Report& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json e{{"id", c.id}, {"identity", c.identity}, {"status", c.passed ? "pass" : "fail"}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    return Json{{"passed", rep.all_passed()}, {"checks", checks}};
}

VolumeProfile profile_from_json(const Json& j, int min_order) {
    int n = j.at("n").get<int>();
    auto entries = [&](const char* key) {
        std::vector<std::pair<int, BigRational>> out;
        if (!j.contains(key)) return out;
        for (const auto& e : j.at(key)) {
            int idx = e.at(0).get<int>();
            if (idx < 0) throw MathError("profile index must be >= 0");
            out.emplace_back(idx, BigRational::parse(e.at(1).get<std::string>()));
        }
        return out;
    };
    auto be = entries("b"), ce = entries("c");
    int high = std::max(min_order, 2 * n + 2);
    for (const auto& [idx, v] : be) high = std::max(high, idx);
    for (const auto& [idx, v] : ce) high = std::max(high, idx);
    RatSeries b(high, BigRational(1)), c(high, BigRational(1));
    for (auto& [idx, v] : be) b.set(idx, std::move(v));
    for (auto& [idx, v] : ce) c.set(idx, std::move(v));
    return VolumeProfile(n, std::move(b), std::move(c));
}

Json to_json(const VolumeProfile& p) {
    auto series = [&](const RatSeries& s) {
        Json arr = Json::array();
        for (int j = 0; j <= s.max_order(); ++j) {
            if (j == 0 || s.at(j).is_zero()) continue;
            arr.push_back(Json::array({j, s.at(j).str()}));
        }
        return arr;
    };
    return Json{{"n", p.n}, {"b", series(p.b)}, {"c", series(p.c)}};
}

}  // namespace ach
