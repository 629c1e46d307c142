#include "fgames/textio.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fgames {

using nlohmann::json;

namespace {

json parse_checked(const std::string& text, std::initializer_list<const char*> allowed) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw GameError("ParseError", e.what());
    }
    if (!j.is_object()) throw GameError("ParseError", "record must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (key == k) ok = true;
        if (!ok) throw GameError("ParseError", "unknown key '" + key + "'");
    }
    return j;
}

RunSpec run_from_json(const json& j) {
    if (!j.is_object() || !j.contains("stem") || !j.contains("tail"))
        throw GameError("ParseError", "run needs 'stem' and 'tail'");
    for (const auto& [key, value] : j.items())
        if (key != "stem" && key != "tail") throw GameError("ParseError", "unknown run key '" + key + "'");
    RunSpec r;
    try {
        r.stem = j.at("stem").get<std::vector<Move>>();
        r.tail = j.at("tail").get<Move>();
    } catch (const json::exception& e) {
        throw GameError("ParseError", e.what());
    }
    return r;
}

json run_to_json(const RunSpec& r) {
    return json{{"stem", r.stem}, {"tail", r.tail}};
}

}  // namespace

GameFile parse_game_record(const std::string& text) {
    const json j = parse_checked(text, {"runs", "alice", "name"});
    if (!j.contains("runs") || !j.contains("alice"))
        throw GameError("ParseError", "game record needs 'runs' and 'alice'");
    GameFile out;
    if (!j.at("runs").is_array()) throw GameError("ParseError", "'runs' must be a list");
    for (const json& rj : j.at("runs")) out.game.runs.push_back(run_from_json(rj));
    try {
        for (std::size_t i : j.at("alice").get<std::vector<std::size_t>>()) out.game.alice.insert(i);
    } catch (const json::exception& e) {
        throw GameError("ParseError", e.what());
    }
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw GameError("ParseError", "'name' must be a string");
        out.name = j.at("name").get<std::string>();
    }
    return out;
}

std::string write_game_record(const FiniteGame& g, const std::optional<std::string>& name) {
    json j;
    j["runs"] = json::array();
    for (const RunSpec& r : g.runs) j["runs"].push_back(run_to_json(r));
    j["alice"] = std::vector<std::size_t>(g.alice.begin(), g.alice.end());
    if (name) j["name"] = *name;
    return j.dump();
}

MorphFile parse_morph_record(const std::string& text) {
    const json j = parse_checked(text, {"source", "target", "map"});
    if (!j.contains("source") || !j.contains("target") || !j.contains("map"))
        throw GameError("ParseError", "morphism record needs 'source', 'target' and 'map'");
    MorphFile out;
    try {
        out.source = j.at("source").get<std::string>();
        out.target = j.at("target").get<std::string>();
        out.map = j.at("map").get<std::vector<std::size_t>>();
    } catch (const json::exception& e) {
        throw GameError("ParseError", e.what());
    }
    return out;
}

std::string write_morph_record(const MorphFile& m) {
    return json{{"source", m.source}, {"target", m.target}, {"map", m.map}}.dump();
}

std::string write_morph_record(const GameMorphism& m, const std::string& source,
                               const std::string& target) {
    return write_morph_record(MorphFile{source, target, m.run_map});
}

namespace {

Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational::make(std::stoll(s), 1);
        return Rational::make(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw GameError("ParseError", "bad rational '" + s + "'");
    }
}

std::string rational_to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace

UltraSpace parse_space_record(const std::string& text) {
    const json j = parse_checked(text, {"dist", "marked"});
    if (!j.contains("dist") || !j.contains("marked"))
        throw GameError("ParseError", "space record needs 'dist' and 'marked'");
    UltraSpace m;
    if (!j.at("dist").is_array()) throw GameError("ParseError", "'dist' must be a matrix");
    for (const json& row : j.at("dist")) {
        std::vector<Rational> out_row;
        if (!row.is_array()) throw GameError("ParseError", "'dist' must be a matrix");
        for (const json& cell : row) {
            if (!cell.is_string()) throw GameError("ParseError", "distances are '0' or '1/n' strings");
            out_row.push_back(rational_from_string(cell.get<std::string>()));
        }
        m.dist.push_back(std::move(out_row));
    }
    m.size = m.dist.size();
    try {
        for (std::size_t i : j.at("marked").get<std::vector<std::size_t>>()) m.marked.insert(i);
    } catch (const json::exception& e) {
        throw GameError("ParseError", e.what());
    }
    return m;
}

std::string write_space_record(const UltraSpace& m) {
    json j;
    j["dist"] = json::array();
    for (const auto& row : m.dist) {
        json out_row = json::array();
        for (const Rational& r : row) out_row.push_back(rational_to_string(r));
        j["dist"].push_back(std::move(out_row));
    }
    j["marked"] = std::vector<std::size_t>(m.marked.begin(), m.marked.end());
    return j.dump();
}

GameSequence parse_sequence_record(const std::string& text) {
    const json j = parse_checked(text, {"stages", "links"});
    if (!j.contains("stages") || !j.contains("links"))
        throw GameError("ParseError", "sequence record needs 'stages' and 'links'");
    GameSequence seq;
    if (!j.at("stages").is_array()) throw GameError("ParseError", "'stages' must be a list");
    for (const json& st : j.at("stages")) seq.games.push_back(parse_game_record(st.dump()).game);
    std::vector<std::vector<std::size_t>> maps;
    try {
        maps = j.at("links").get<std::vector<std::vector<std::size_t>>>();
    } catch (const json::exception& e) {
        throw GameError("ParseError", e.what());
    }
    if (maps.size() + 1 != seq.games.size() && !(seq.games.empty() && maps.empty()))
        throw GameError("ParseError", "links must chain the stages");
    for (std::size_t n = 0; n < maps.size(); ++n)
        seq.links.push_back(GameMorphism{seq.games[n], seq.games[n + 1], maps[n]});
    return seq;
}

std::string write_sequence_record(const GameSequence& seq) {
    json j;
    j["stages"] = json::array();
    for (const FiniteGame& g : seq.games) j["stages"].push_back(json::parse(write_game_record(g)));
    j["links"] = json::array();
    for (const GameMorphism& m : seq.links) j["links"].push_back(m.run_map);
    return j.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GameError("ParseError", "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace fgames
