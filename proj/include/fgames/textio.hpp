#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fgames/limits.hpp"
#include "fgames/metric.hpp"

namespace fgames {

/// A parsed game record: runs, alice indices, optional name. Unknown keys are
/// rejected. Throws GameError("ParseError") on malformed input.
struct GameFile {
    FiniteGame game;
    std::optional<std::string> name;
};

GameFile parse_game_record(const std::string& text);
std::string write_game_record(const FiniteGame& g, const std::optional<std::string>& name = {});

/// A morphism record: source name, target name and the run map.
struct MorphFile {
    std::string source;
    std::string target;
    std::vector<std::size_t> map;
};

MorphFile parse_morph_record(const std::string& text);
std::string write_morph_record(const MorphFile& m);
std::string write_morph_record(const GameMorphism& m, const std::string& source,
                               const std::string& target);

/// An ultrametric-space record: distance matrix of "0" / "1/n" strings plus the
/// marked points.
UltraSpace parse_space_record(const std::string& text);
std::string write_space_record(const UltraSpace& m);

/// A sequence record: stages plus run maps linking consecutive stages.
GameSequence parse_sequence_record(const std::string& text);
std::string write_sequence_record(const GameSequence& seq);

std::string read_file(const std::string& path);

}  // namespace fgames
