#include "flagforge/io.hpp"

#include <fstream>
#include <sstream>

#include "flagforge/error.hpp"

namespace flagforge {

namespace {

std::string type_name(const Json& j) { return j.type_name(); }

std::vector<int> int_list(const Json& j, const char* name) {
    require(j.is_array(), "ParseError",
            std::string("field '") + name + "' must be an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        require(v.is_number_integer(), "ParseError",
                std::string("field '") + name + "' must hold integers, found " +
                    type_name(v));
        out.push_back(v.get<int>());
    }
    return out;
}

HomMap map_from_json(const Json& rows, FreeModule src, FreeModule tgt, int deg,
                     const char* name) {
    require(rows.is_array() && rows.size() == tgt.rank(), "ParseError",
            std::string("field '") + name + "' must have one row per target generator");
    HomMap m(std::move(src), std::move(tgt), deg);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Json& row = rows[r];
        require(row.is_array() && row.size() == m.source().rank(), "ParseError",
                std::string("field '") + name + "' row " + std::to_string(r) +
                    " must have one entry per source generator");
        for (std::size_t c = 0; c < row.size(); ++c) {
            require(row[c].is_string(), "ParseError",
                    std::string("field '") + name + "' entries must be polynomial strings");
            Poly p = Poly::parse(m.ring(), row[c].get<std::string>());
            if (!p.is_zero()) m.set(r, c, std::move(p));
        }
    }
    return m;
}

Json map_to_json(const HomMap& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.target().rank(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.source().rank(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

const Json& json_field(const Json& j, const char* name) {
    require(j.is_object(), "ParseError",
            std::string("expected an object around field '") + name + "'");
    auto it = j.find(name);
    require(it != j.end(), "ParseError", std::string("missing field '") + name + "'");
    return *it;
}

Json ring_to_json(const RingPtr& ring) {
    Json j = Json::object();
    if (ring->field.is_rational())
        j["field"] = "q";
    else
        j["field"] = ring->field.p;
    j["vars"] = ring->vars;
    return j;
}

RingPtr ring_from_json(const Json& j) {
    const Json& f = json_field(j, "field");
    FieldSpec field;
    if (f.is_string()) {
        require(f.get<std::string>() == "q", "ParseError",
                "field must be \"q\" or a prime number");
    } else {
        require(f.is_number_unsigned() || f.is_number_integer(), "ParseError",
                "field must be \"q\" or a prime number");
        long long p = f.get<long long>();
        require(p > 0, "ParseError", "field modulus must be positive");
        field.p = static_cast<std::uint32_t>(p);
    }
    validate_field(field);
    const Json& vars = json_field(j, "vars");
    require(vars.is_array() && !vars.empty(), "ParseError",
            "field 'vars' must be a nonempty array of names");
    std::vector<std::string> names;
    for (const auto& v : vars) {
        require(v.is_string(), "ParseError", "variable names must be strings");
        names.push_back(v.get<std::string>());
    }
    return make_ring(field, std::move(names));
}

Json complex_to_json(const FreeComplex& C) {
    Json j = Json::object();
    j["ring"] = ring_to_json(C.ring());
    Json twists = Json::array();
    for (std::size_t i = 0; i <= C.length(); ++i) twists.push_back(C.module(i).twists);
    j["twists"] = std::move(twists);
    Json maps = Json::array();
    for (std::size_t i = 1; i <= C.length(); ++i) maps.push_back(map_to_json(C.diff(i)));
    j["maps"] = std::move(maps);
    return j;
}

FreeComplex complex_from_json(const Json& j) {
    RingPtr ring = ring_from_json(json_field(j, "ring"));
    const Json& tw = json_field(j, "twists");
    require(tw.is_array() && !tw.empty(), "ParseError",
            "field 'twists' must list one twist array per module");
    std::vector<FreeModule> mods;
    for (const auto& t : tw) mods.push_back(FreeModule{ring, int_list(t, "twists")});
    const Json& maps = json_field(j, "maps");
    require(maps.is_array() && maps.size() + 1 == mods.size(), "ParseError",
            "field 'maps' must hold one differential per adjacent module pair");
    std::vector<HomMap> diffs;
    for (std::size_t i = 0; i < maps.size(); ++i)
        diffs.push_back(map_from_json(maps[i], mods[i + 1], mods[i], 0, "maps"));
    FreeComplex C(std::move(mods), std::move(diffs));
    C.validate();
    return C;
}

Json dm_to_json(const DifferentialModule& D) {
    Json j = Json::object();
    j["ring"] = ring_to_json(D.mod.ring);
    j["degree"] = D.degree;
    j["twists"] = D.mod.twists;
    j["matrix"] = map_to_json(D.d);
    if (D.flag_levels) j["flag_levels"] = *D.flag_levels;
    return j;
}

DifferentialModule dm_from_json(const Json& j) {
    RingPtr ring = ring_from_json(json_field(j, "ring"));
    const Json& deg = json_field(j, "degree");
    require(deg.is_number_integer(), "ParseError", "field 'degree' must be an integer");
    FreeModule mod{ring, int_list(json_field(j, "twists"), "twists")};
    HomMap d = map_from_json(json_field(j, "matrix"), mod, mod, deg.get<int>(), "matrix");
    DifferentialModule D{std::move(mod), deg.get<int>(), std::move(d), std::nullopt};
    if (j.contains("flag_levels")) {
        const Json& fl = j["flag_levels"];
        require(fl.is_array(), "ParseError", "field 'flag_levels' must be an array");
        std::vector<std::vector<std::size_t>> levels;
        for (const auto& lv : fl) {
            require(lv.is_array(), "ParseError",
                    "field 'flag_levels' must hold arrays of generator indices");
            std::vector<std::size_t> level;
            for (const auto& g : lv) {
                require(g.is_number_unsigned() || g.is_number_integer(), "ParseError",
                        "flag level entries must be generator indices");
                level.push_back(g.get<std::size_t>());
            }
            levels.push_back(std::move(level));
        }
        D.flag_levels = std::move(levels);
    }
    D.validate();
    if (D.flag_levels) validate_flag(D);
    return D;
}

Json ci_to_json(const CompleteIntersection& ci) {
    Json j = Json::object();
    j["ring"] = ring_to_json(ci.ring);
    Json gens = Json::array();
    for (const auto& g : ci.gens) gens.push_back(g.str());
    j["gens"] = std::move(gens);
    return j;
}

CompleteIntersection ci_from_json(const Json& j) {
    if (j.contains("gens")) {
        RingPtr ring = ring_from_json(json_field(j, "ring"));
        const Json& gens = json_field(j, "gens");
        require(gens.is_array() && !gens.empty(), "ParseError",
                "field 'gens' must be a nonempty array of polynomial strings");
        std::vector<Poly> polys;
        for (const auto& g : gens) {
            require(g.is_string(), "ParseError", "generators must be polynomial strings");
            polys.push_back(Poly::parse(ring, g.get<std::string>()));
        }
        return make_ci(std::move(ring), std::move(polys));
    }
    const Json& n = json_field(j, "n");
    require(n.is_number_integer() || n.is_number_unsigned(), "ParseError",
            "field 'n' must be the number of variables");
    require(n.get<long long>() > 0, "ParseError", "field 'n' must be positive");
    FieldSpec field;
    if (j.contains("field")) {
        const Json& f = j["field"];
        if (f.is_string()) {
            require(f.get<std::string>() == "q", "ParseError",
                    "field must be \"q\" or a prime number");
        } else {
            require(f.is_number_integer() || f.is_number_unsigned(), "ParseError",
                    "field must be \"q\" or a prime number");
            long long p = f.get<long long>();
            require(p > 0, "ParseError", "field modulus must be positive");
            field.p = static_cast<std::uint32_t>(p);
        }
    }
    return make_ci_degrees(field, n.get<std::size_t>(),
                           int_list(json_field(j, "degrees"), "degrees"));
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "ParseError", "cannot open file " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail("ParseError", path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    require(out.good(), "ParseError", "cannot open file " + path + " for writing");
    out << j.dump(2) << "\n";
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

Json RunReport::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    j["stages"] = stages;
    j["results"] = results;
    j["timing_seconds"] = seconds;
    return j;
}

} // namespace flagforge
