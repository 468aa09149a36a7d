#include "bsc/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsc/error.hpp"

namespace bsc {

using Json = nlohmann::ordered_json;

std::string ts_to_json(const FiniteTS& ts, int indent) {
  const Signature& sig = ts.signature();
  Json j;
  Json consts = Json::object();
  for (std::size_t k = 0; k < sig.constants().size(); ++k) {
    ObjectId o = ts.num_states() ? ts.label(0).constant(k) : ObjectId::named(sig.constants()[k]);
    consts[symbol_name(sig.constants()[k])] = o.str();
  }
  j["constants"] = consts;
  Json fl = Json::object();
  for (const FluentDecl& f : sig.fluents()) fl[symbol_name(f.name)] = f.arity;
  j["fluents"] = fl;
  Json states = Json::array();
  for (std::size_t q = 0; q < ts.num_states(); ++q) {
    Json rels = Json::object();
    for (std::size_t f = 0; f < sig.fluents().size(); ++f) {
      Json tuples = Json::array();
      for (const Tuple& t : ts.label(q).relation(f)) {
        Json row = Json::array();
        for (ObjectId o : t) row.push_back(o.str());
        tuples.push_back(row);
      }
      rels[symbol_name(sig.fluents()[f].name)] = tuples;
    }
    states.push_back(Json{{"id", q}, {"fluents", rels}});
  }
  j["states"] = states;
  j["initial"] = ts.initial();
  Json tr = Json::array();
  for (auto [a, b] : ts.transitions()) tr.push_back(Json::array({a, b}));
  j["transitions"] = tr;
  return j.dump(indent) + "\n";
}

FiniteTS ts_from_json(const std::string& text) {
  try {
    Json j = Json::parse(text);
    std::vector<FluentDecl> fluents;
    for (const auto& [name, ar] : j.at("fluents").items()) fluents.push_back({intern(name), ar.get<std::size_t>()});
    std::vector<Symbol> consts;
    std::vector<ObjectId> cvals;
    for (const auto& [name, obj] : j.at("constants").items()) {
      consts.push_back(intern(name));
      cvals.push_back(ObjectId::parse(obj.get<std::string>()));
    }
    Signature sig(fluents, consts);
    FiniteTS ts(sig);
    const Json& states = j.at("states");
    for (std::size_t q = 0; q < states.size(); ++q) {
      const Json& s = states[q];
      if (s.at("id").get<std::size_t>() != q) throw Error("state ids must be 0, 1, ... in order");
      std::vector<Relation> rels;
      for (const FluentDecl& f : fluents) {
        std::vector<Tuple> tuples;
        for (const Json& row : s.at("fluents").at(symbol_name(f.name))) {
          if (row.size() != f.arity) throw Error("tuple width differs from the arity of " + symbol_name(f.name));
          Tuple t;
          for (const Json& o : row) t.push_back(ObjectId::parse(o.get<std::string>()));
          tuples.push_back(t);
        }
        rels.emplace_back(std::move(tuples));
      }
      ts.add_state(Interpretation(std::move(rels), cvals));
    }
    std::size_t init = j.at("initial").get<std::size_t>();
    if (init >= ts.num_states()) throw Error("initial state out of range");
    ts.set_initial(init);
    for (const Json& e : j.at("transitions")) {
      std::size_t a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>();
      if (a >= ts.num_states() || b >= ts.num_states()) throw Error("transition endpoint out of range");
      ts.add_transition(a, b);
    }
    if (auto errs = ts.validate(); !errs.empty()) throw Error(errs[0]);
    return ts;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed transition system JSON: ") + e.what());
  }
}

FiniteTS load_ts(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ts_from_json(ss.str());
}

}  // namespace bsc
