#include "masstransport/spec_json.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "masstransport/errors.hpp"
#include "masstransport/process.hpp"

namespace mtp {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SpecParseError(child(path, key), "missing required field");
  return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw SpecParseError(child(path, key), "unknown field");
  }
}

const json& array_at(const json& obj, const std::string& key, const std::string& path) {
  const auto& a = field(obj, key, path);
  if (!a.is_array()) throw SpecParseError(child(path, key), "expected an array");
  return a;
}

double to_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw SpecParseError(path, "expected a number");
  return j.get<double>();
}

Rational to_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw SpecParseError(path, "expected a rational as a \"p/q\" string or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SpecParseError(path, e.what());
  }
}

/// Integers and "p/q" strings are exact; other JSON numbers are plain doubles.
Number to_number(const json& j, const std::string& path) {
  if (j.is_number_integer() || j.is_string()) return Number::from_rational(to_rational(j, path));
  if (j.is_number()) return Number::from_double(j.get<double>());
  throw SpecParseError(path, "expected a number or a \"p/q\" string");
}

std::vector<Number> numbers(const json& obj, const std::string& key, const std::string& path) {
  const auto& a = array_at(obj, key, path);
  std::vector<Number> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_number(a[i], child(child(path, key), i)));
  return out;
}

std::vector<Rational> rationals(const json& a, const std::string& path) {
  if (!a.is_array()) throw SpecParseError(path, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_rational(a[i], child(path, i)));
  return out;
}

ProcessKind kind_of(const json& doc, const std::string& path) {
  const auto& k = field(doc, "kind", path);
  if (!k.is_string()) throw SpecParseError(child(path, "kind"), "expected a string");
  const auto name = k.get<std::string>();
  for (auto kind : {ProcessKind::IidDiscrete, ProcessKind::IidGaussian, ProcessKind::MarkovChain,
                    ProcessKind::MovingAverage, ProcessKind::Rotation, ProcessKind::Mixture}) {
    if (name == to_string(kind)) return kind;
  }
  throw SpecParseError(child(path, "kind"), "unknown process kind '" + name + "'");
}

ProcessSpec parse_at(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw SpecParseError(path.empty() ? "/" : path, "expected an object");
  switch (kind_of(doc, path)) {
    case ProcessKind::IidDiscrete:
      check_keys(doc, {"kind", "description", "values", "probabilities"}, path);
      return ProcessSpec{IidDiscreteSpec{numbers(doc, "values", path),
                                         rationals(field(doc, "probabilities", path), child(path, "probabilities"))}};

    case ProcessKind::IidGaussian:
      check_keys(doc, {"kind", "description", "mean", "stddev"}, path);
      return ProcessSpec{IidGaussianSpec{to_real(field(doc, "mean", path), child(path, "mean")),
                                         to_real(field(doc, "stddev", path), child(path, "stddev"))}};

    case ProcessKind::MarkovChain: {
      check_keys(doc, {"kind", "description", "transition", "payoffs"}, path);
      const auto& rows = array_at(doc, "transition", path);
      MarkovChainSpec m;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        m.transition.push_back(rationals(rows[i], child(child(path, "transition"), i)));
      }
      m.payoffs = numbers(doc, "payoffs", path);
      return ProcessSpec{std::move(m)};
    }

    case ProcessKind::MovingAverage: {
      check_keys(doc, {"kind", "description", "coefficients", "innovation"}, path);
      MovingAverageSpec ma;
      ma.coefficients = numbers(doc, "coefficients", path);
      const auto inner_path = child(path, "innovation");
      auto inner = parse_at(field(doc, "innovation", path), inner_path);
      if (auto* d = std::get_if<IidDiscreteSpec>(&inner.body)) {
        ma.innovation = std::move(*d);
      } else if (auto* g = std::get_if<IidGaussianSpec>(&inner.body)) {
        ma.innovation = *g;
      } else {
        throw SpecParseError(child(inner_path, "kind"), "innovation must be IidDiscrete or IidGaussian");
      }
      return ProcessSpec{std::move(ma)};
    }

    case ProcessKind::Rotation: {
      check_keys(doc, {"kind", "description", "alpha", "pieces"}, path);
      RotationSpec r;
      if (doc.contains("alpha")) r.alpha = to_real(doc["alpha"], child(path, "alpha"));
      const auto& pieces = array_at(doc, "pieces", path);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto here = child(child(path, "pieces"), i);
        if (!pieces[i].is_object()) throw SpecParseError(here, "expected an object");
        check_keys(pieces[i], {"breakpoint", "value"}, here);
        r.pieces.push_back({to_real(field(pieces[i], "breakpoint", here), child(here, "breakpoint")),
                            to_real(field(pieces[i], "value", here), child(here, "value"))});
      }
      return ProcessSpec{std::move(r)};
    }

    case ProcessKind::Mixture: {
      check_keys(doc, {"kind", "description", "components"}, path);
      const auto& comps = array_at(doc, "components", path);
      MixtureSpec mix;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto here = child(child(path, "components"), i);
        if (!comps[i].is_object()) throw SpecParseError(here, "expected an object");
        check_keys(comps[i], {"weight", "process"}, here);
        mix.components.push_back({to_rational(field(comps[i], "weight", here), child(here, "weight")),
                                  parse_at(field(comps[i], "process", here), child(here, "process"))});
      }
      return ProcessSpec{std::move(mix)};
    }
  }
  throw SpecParseError(path, "unreachable");
}

json rational_json(const Rational& r) { return to_string(r); }

json number_json(const Number& n) {
  if (!n.exact) return n.value;
  const auto& r = *n.exact;
  if (boost::multiprecision::denominator(r) == 1) {
    const auto& num = boost::multiprecision::numerator(r);
    if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max()) {
      return num.convert_to<std::int64_t>();
    }
  }
  return to_string(r);
}

json numbers_json(const std::vector<Number>& ns) {
  json a = json::array();
  for (const auto& n : ns) a.push_back(number_json(n));
  return a;
}

json rationals_json(const std::vector<Rational>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(rational_json(r));
  return a;
}

}  // namespace

ProcessSpec spec_from_json(const json& doc) { return parse_at(doc, ""); }

json spec_to_json(const ProcessSpec& spec) {
  json out;
  out["kind"] = std::string(to_string(spec.kind()));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidDiscreteSpec>) {
          out["values"] = numbers_json(s.values);
          out["probabilities"] = rationals_json(s.probabilities);
        } else if constexpr (std::is_same_v<T, IidGaussianSpec>) {
          out["mean"] = s.mean;
          out["stddev"] = s.stddev;
        } else if constexpr (std::is_same_v<T, MarkovChainSpec>) {
          json rows = json::array();
          for (const auto& row : s.transition) rows.push_back(rationals_json(row));
          out["transition"] = std::move(rows);
          out["payoffs"] = numbers_json(s.payoffs);
        } else if constexpr (std::is_same_v<T, MovingAverageSpec>) {
          out["coefficients"] = numbers_json(s.coefficients);
          out["innovation"] = std::visit([](const auto& inner) { return spec_to_json(ProcessSpec{inner}); },
                                         s.innovation);
        } else if constexpr (std::is_same_v<T, RotationSpec>) {
          out["alpha"] = s.alpha;
          json pieces = json::array();
          for (const auto& p : s.pieces) pieces.push_back({{"breakpoint", p.breakpoint}, {"value", p.value}});
          out["pieces"] = std::move(pieces);
        } else {
          json comps = json::array();
          for (const auto& c : s.components) {
            comps.push_back({{"weight", rational_json(c.weight)}, {"process", spec_to_json(c.process)}});
          }
          out["components"] = std::move(comps);
        }
      },
      spec.body);
  return out;
}

ProcessSpec parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecParseError("/", std::string("malformed JSON: ") + e.what());
  }
  auto spec = spec_from_json(doc);
  Process::make(spec);
  return spec;
}

}  // namespace mtp
