#include "chipfire/serialize.hpp"

#include <sstream>

#include "chipfire/errors.hpp"

namespace chipfire {

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("not an integer: '" + j.get<std::string>() + "'");
    }
  }
  throw ParseError("expected an integer or a decimal string");
}

Json vec_to_json(const Vec& v) {
  Json arr = Json::array();
  for (const Int& e : v) arr.push_back(int_to_json(e));
  return arr;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers");
  Vec v;
  for (const auto& e : j) v.push_back(int_from_json(e));
  return v;
}

Json witness_to_json(const GameTrace& t) {
  Json firings = Json::array();
  for (const FiringRun& run : t.runs)
    firings.push_back(Json::array({Json(run.vertex + 1), int_to_json(run.count)}));
  return Json{{"type", "game"}, {"firings", firings}};
}

std::vector<FiringRun> witness_runs_from_json(const Json& j) {
  if (!j.is_object() || j.value("type", "") != "game")
    throw ParseError("expected a witness object with type 'game'");
  std::vector<FiringRun> runs;
  for (const auto& e : j.at("firings")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("firing entries are [vertex,count] pairs");
    int v = e[0].get<int>() - 1;
    runs.push_back({v, int_from_json(e[1])});
  }
  return runs;
}

Json certificate_to_json(const ReachCertificate& c) {
  return Json{{"type", "nonreach"}, {"f", vec_to_json(c.f)}, {"g", vec_to_json(c.g)}};
}

ReachCertificate certificate_from_json(const Json& j) {
  if (!j.is_object() || j.value("type", "") != "nonreach")
    throw ParseError("expected a certificate object with type 'nonreach'");
  return ReachCertificate{vec_from_json(j.at("f")), vec_from_json(j.at("g"))};
}

Json halting_certificate_to_json(const HaltingCertificate& c) {
  return Json{{"type", "nonterminating"}, {"y", vec_to_json(c.y)}};
}

HaltingCertificate halting_certificate_from_json(const Json& j) {
  if (!j.is_object() || j.value("type", "") != "nonterminating")
    throw ParseError("expected a certificate object with type 'nonterminating'");
  return HaltingCertificate{vec_from_json(j.at("y"))};
}

Vec parse_vector(const std::string& text, int n) {
  std::vector<std::string> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (static_cast<int>(tokens.size()) != n)
    throw ValidationError("expected " + std::to_string(n) + " entries, got " +
                          std::to_string(tokens.size()));
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    try {
      v[i] = Int(tokens[i]);
    } catch (const std::invalid_argument&) {
      throw ParseError("not an integer: '" + tokens[i] + "'");
    }
  }
  return v;
}

std::string write_vector(const Vec& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i].get_str();
  }
  return out.str();
}

std::string format_runs(const std::vector<FiringRun>& runs) {
  if (runs.empty()) return "(empty)";
  std::ostringstream out;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i) out << ", ";
    out << 'v' << runs[i].vertex + 1 << " x" << runs[i].count.get_str();
  }
  return out.str();
}

}  // namespace chipfire
