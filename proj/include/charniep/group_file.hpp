#pragma once

// Group definition files (YAML). Exactly one of
//   cyclic_factors: [2, 2]
//   generators: ["(1 2)", "(1 2 3)"]
//   cayley: [[0, 1], [1, 0]]
// plus an optional `label`. Requires yaml-cpp.

#include "charniep/catalog.hpp"
#include "charniep/group.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace charniep {

inline FiniteGroup parse_group_yaml(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorKind::parse_error, std::string("group file: ") + e.what());
    }
    if (!root.IsMap()) throw Error(ErrorKind::parse_error, "group file must be a mapping");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (key != "label" && key != "cyclic_factors" && key != "generators" && key != "cayley")
            throw Error(ErrorKind::parse_error, "group file: unknown key \"" + key + "\"");
    }
    const int sources = static_cast<int>(static_cast<bool>(root["cyclic_factors"])) +
                        static_cast<int>(static_cast<bool>(root["generators"])) +
                        static_cast<int>(static_cast<bool>(root["cayley"]));
    if (sources != 1) {
        throw Error(ErrorKind::parse_error,
                    "group file needs exactly one of cyclic_factors, generators, cayley (found " +
                        std::to_string(sources) + ")");
    }
    try {
        std::string label = root["label"] ? root["label"].as<std::string>() : std::string();
        if (root["cyclic_factors"]) {
            const auto f = root["cyclic_factors"].as<std::vector<long long>>();
            std::vector<std::size_t> factors;
            for (long long v : f) {
                if (v < 1) throw Error(ErrorKind::invalid_order, "cyclic factor " + std::to_string(v) + " must be positive");
                factors.push_back(static_cast<std::size_t>(v));
            }
            FiniteGroup g = build_abelian(factors);
            return label.empty() ? g : g.relabeled(label);
        }
        if (root["generators"]) {
            std::vector<Permutation> perms;
            for (const auto& t : root["generators"].as<std::vector<std::string>>()) perms.push_back(parse_cycles(t));
            if (perms.empty()) throw Error(ErrorKind::invalid_group, "generator list is empty");
            return build_from_generators(perms, label.empty() ? "G" : label);
        }
        const auto rows = root["cayley"].as<std::vector<std::vector<int>>>();
        return build_from_cayley(rows, label.empty() ? "G" : label);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorKind::parse_error, std::string("group file: ") + e.what());
    }
}

inline FiniteGroup load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse_error, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_group_yaml(ss.str());
}

}  // namespace charniep
