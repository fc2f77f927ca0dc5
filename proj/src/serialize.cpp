#include "zipstrata/serialize.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "zipstrata/errors.hpp"

namespace zipstrata {

using nlohmann::json;

PosetDocument make_document(const ZipDatum& d, const StrataPoset& p, Side side) {
  const WeylGroup& g = *d.group;
  PosetDocument doc;
  doc.type = type_label(g.root_system().datum());
  doc.I = d.I.to_string();
  doc.flavor = to_string(d.flavor);
  doc.side = to_string(side);
  for (std::size_t i = 0; i < p.size(); ++i) {
    doc.labels.push_back(g.word_string(p.labels[i]));
    doc.lengths.push_back(p.dim[i]);
  }
  doc.leq = p.leq;
  doc.hasse = p.hasse;
  return doc;
}

std::string to_dot(const PosetDocument& doc) {
  std::ostringstream os;
  os << "digraph \"" << doc.type << " I=" << doc.I << ' ' << doc.flavor << ' ' << doc.side << "\" {\n";
  os << "  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < doc.labels.size(); ++i)
    os << "  \"" << doc.labels[i] << "\" [label=\"" << doc.labels[i] << "\", xlabel=\"" << doc.lengths[i] << "\"];\n";
  for (const auto& [lo, hi] : doc.hasse) os << "  \"" << doc.labels[lo] << "\" -> \"" << doc.labels[hi] << "\";\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const PosetDocument& doc, int indent) {
  json j;
  j["schema"] = doc.schema;
  j["type"] = doc.type;
  j["I"] = doc.I;
  j["flavor"] = doc.flavor;
  j["side"] = doc.side;
  j["labels"] = doc.labels;
  j["lengths"] = doc.lengths;
  json m = json::array();
  for (const auto& row : doc.leq) {
    json r = json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    m.push_back(r);
  }
  j["leq_matrix"] = m;
  json h = json::array();
  for (const auto& [lo, hi] : doc.hasse) h.push_back({lo, hi});
  j["hasse"] = h;
  return j.dump(indent) + "\n";
}

PosetDocument parse_json(const std::string& text) {
  PosetDocument doc;
  try {
    const json j = json::parse(text);
    doc.schema = j.at("schema").get<int>();
    if (doc.schema != kJsonSchema) throw ConfigError("unsupported poset schema " + std::to_string(doc.schema));
    doc.type = j.at("type").get<std::string>();
    doc.I = j.at("I").get<std::string>();
    doc.flavor = j.at("flavor").get<std::string>();
    doc.side = j.at("side").get<std::string>();
    doc.labels = j.at("labels").get<std::vector<std::string>>();
    doc.lengths = j.at("lengths").get<std::vector<int>>();
    const std::size_t n = doc.labels.size();
    if (doc.lengths.size() != n) throw ConfigError("lengths and labels differ in size");
    for (const auto& row : j.at("leq_matrix")) {
      std::vector<bool> r;
      for (const auto& v : row) r.push_back(v.get<int>() != 0);
      if (r.size() != n) throw ConfigError("leq_matrix is not square");
      doc.leq.push_back(std::move(r));
    }
    if (doc.leq.size() != n) throw ConfigError("leq_matrix is not square");
    for (const auto& e : j.at("hasse")) {
      const auto lo = e.at(0).get<std::size_t>();
      const auto hi = e.at(1).get<std::size_t>();
      if (lo >= n || hi >= n) throw ConfigError("hasse edge out of range");
      doc.hasse.emplace_back(lo, hi);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed poset JSON: ") + e.what());
  }
  return doc;
}

}  // namespace zipstrata
