#ifndef ABDHOM_JSON_IO_HPP
#define ABDHOM_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "abdhom/compass.hpp"
#include "abdhom/model.hpp"
#include "abdhom/tiling.hpp"

namespace abdhom {

// Malformed or unreadable JSON input.
class JsonInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Well-formed JSON that does not describe a valid object of the requested kind.
class JsonContentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonInputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw JsonInputError(path + ": " + e.what());
  }
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonInputError(e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw JsonInputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline json model_to_json(const HomModel& m) {
  json pts = json::array();
  for (const auto& p : m.points) pts.push_back(json(std::vector<std::string>(p.begin(), p.end())));
  return {{"n", m.n}, {"points", pts}};
}

inline HomModel model_from_json(const json& j) {
  try {
    auto n = j.at("n").get<std::size_t>();
    std::vector<std::set<std::string>> pts;
    for (const auto& p : j.at("points")) pts.push_back(p.get<std::set<std::string>>());
    return HomModel(n, std::move(pts));
  } catch (const json::exception& e) {
    throw JsonContentError(std::string("bad model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw JsonContentError(std::string("bad model: ") + e.what());
  }
}

inline json compass_to_json(const AtomSpace& sp, const Compass& c) {
  const Closure& cl = sp.closure();
  json closure = json::array();
  for (std::size_t i = 0; i < cl.pair_count(); ++i) closure.push_back(to_string(cl.pair(i).formula));
  json cells = json::array();
  for (std::size_t x = 0; x <= c.n(); ++x)
    for (std::size_t y = x; y <= c.n(); ++y) {
      const Atom& a = c.at(x, y);
      json members = json::array();
      for (std::size_t i = 0; i < cl.pair_count(); ++i)
        if (a.f.test(i)) members.push_back(closure[i]);
      cells.push_back({{"x", x}, {"y", y}, {"members", members}, {"alpha", sp.alpha_string(a)}});
    }
  return {{"n", c.n()}, {"formula", to_string(cl.phi())}, {"closure", closure}, {"cells", cells}};
}

// Reads a compass over the closure of `sp`; the file's closure list must match.
inline Compass compass_from_json(const AtomSpace& sp, const json& j) {
  const Closure& cl = sp.closure();
  try {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < cl.pair_count(); ++i) index.emplace(to_string(cl.pair(i).formula), i);
    if (j.contains("closure")) {
      auto listed = j.at("closure").get<std::vector<std::string>>();
      std::set<std::string> mine, theirs(listed.begin(), listed.end());
      for (const auto& [s, i] : index) mine.insert(s);
      if (mine != theirs) throw JsonContentError("closure mismatch between file and formula");
    }
    auto n = j.at("n").get<std::size_t>();
    Compass c(n);
    std::vector<char> seen((n + 1) * (n + 1), 0);
    for (const auto& cell : j.at("cells")) {
      auto x = cell.at("x").get<std::size_t>();
      auto y = cell.at("y").get<std::size_t>();
      if (x > y || y > n) throw JsonContentError("cell outside the compass");
      Atom a{Bits(cl.pair_count()), {}};
      for (const auto& m : cell.at("members")) {
        auto it = index.find(m.get<std::string>());
        if (it == index.end()) throw JsonContentError("closure mismatch: unknown member " + m.get<std::string>());
        a.f.set(it->second);
      }
      auto alpha = cell.at("alpha").get<std::string>();
      if (alpha.size() != sp.tfa_size()) throw JsonContentError("closure mismatch: alpha has wrong length");
      for (char ch : alpha) a.alpha.push_back(status_from_char(ch));
      c.at(x, y) = std::move(a);
      seen[x * (n + 1) + y] = 1;
    }
    for (std::size_t x = 0; x <= n; ++x)
      for (std::size_t y = x; y <= n; ++y)
        if (!seen[x * (n + 1) + y]) throw JsonContentError("missing cell (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return c;
  } catch (const json::exception& e) {
    throw JsonContentError(std::string("bad compass: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw JsonContentError(std::string("bad compass: ") + e.what());
  }
}

inline json instance_to_json(const TilingInstance& t) {
  json h = json::array(), v = json::array();
  for (auto [i, j] : t.horiz) h.push_back({i, j});
  for (auto [i, j] : t.vert) v.push_back({i, j});
  return {{"t_max", t.t_max}, {"c", t.bits()}, {"horiz", h}, {"vert", v}};
}

inline TilingInstance instance_from_json(const json& j) {
  try {
    std::set<std::pair<std::size_t, std::size_t>> h, v;
    for (const auto& p : j.at("horiz")) h.insert(p.get<std::pair<std::size_t, std::size_t>>());
    for (const auto& p : j.at("vert")) v.insert(p.get<std::pair<std::size_t, std::size_t>>());
    return make_instance(j.at("t_max").get<std::size_t>(), j.at("c").get<std::size_t>(), std::move(h), std::move(v));
  } catch (const json::exception& e) {
    throw JsonContentError(std::string("bad instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw JsonContentError(std::string("bad instance: ") + e.what());
  }
}

inline json grid_to_json(const TileGrid& g) {
  return {{"prefix", g.prefix}, {"period", g.period}, {"columns", g.columns}};
}

}  // namespace abdhom

#endif
