#include "mqsp/serialize.hpp"

namespace mqsp {

namespace {

const char* backend_name(Backend b) {
  return b == Backend::Exact ? "exact" : "float";
}

Json scalar_parts(const Scalar& c) {
  Json out;
  if (c.is_exact()) {
    out["re"] = format_rational(c.re());
    out["im"] = format_rational(c.im());
  } else {
    const auto z = c.to_complex();
    out["re"] = z.real();
    out["im"] = z.imag();
  }
  return out;
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(where + "." + key, "missing required field");
  return *it;
}

int need_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer())
    throw ParseError(where + "." + key, "expected an integer");
  return v.get<int>();
}

Rational rational_field(const Json& v, const std::string& where) {
  if (!v.is_string())
    throw ParseError(where, "exact values must be \"num/den\" strings");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
}

double double_field(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  return v.get<double>();
}

Scalar scalar_from_parts(const Json& j, Backend b, const std::string& where) {
  const Json& re = need(j, "re", where);
  const Json& im = need(j, "im", where);
  if (b == Backend::Exact)
    return Scalar::exact(rational_field(re, where + ".re"),
                         rational_field(im, where + ".im"));
  return Scalar::floating({double_field(re, where + ".re"),
                           double_field(im, where + ".im")});
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(where, e.what());
  }
}

Json to_json(const BiLaurent& p) {
  Json out;
  out["backend"] = backend_name(p.backend());
  Json entries = Json::array();
  for (const auto& [e, c] : p.entries()) {
    Json term = scalar_parts(c);
    term["j"] = e.j;
    term["k"] = e.k;
    entries.push_back(std::move(term));
  }
  out["entries"] = std::move(entries);
  return out;
}

BiLaurent bilaurent_from_json(const Json& j, const std::string& where) {
  const Json& backend = need(j, "backend", where);
  Backend b;
  if (backend == "exact")
    b = Backend::Exact;
  else if (backend == "float")
    b = Backend::Float;
  else
    throw ParseError(where + ".backend", "expected \"exact\" or \"float\"");
  const Json& entries = need(j, "entries", where);
  if (!entries.is_array())
    throw ParseError(where + ".entries", "expected an array");
  BiLaurent out(b);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = where + ".entries[" + std::to_string(i) + "]";
    const Json& term = entries[i];
    out.add_term(need_int(term, "j", at), need_int(term, "k", at),
                 scalar_from_parts(term, b, at));
  }
  return out;
}

Json to_json(const PolyPair& pair) {
  Json out;
  out["p"] = to_json(pair.p);
  out["q"] = to_json(pair.q);
  out["n"] = pair.n;
  out["m"] = pair.m;
  return out;
}

PolyPair pair_from_json(const Json& j, const std::string& where) {
  PolyPair pair;
  pair.p = bilaurent_from_json(need(j, "p", where), where + ".p");
  pair.q = bilaurent_from_json(need(j, "q", where), where + ".q");
  pair.n = need_int(j, "n", where);
  pair.m = need_int(j, "m", where);
  if (pair.p.backend() != pair.q.backend())
    throw ParseError(where, "p and q use different backends");
  if (pair.n < 0 || pair.m < 0 || pair.m > pair.n)
    throw ParseError(where, "need 0 <= m <= n");
  return pair;
}

Json to_json(const UnitPhase& phase) {
  Json out;
  if (phase.is_exact()) {
    out["kind"] = "exact";
    out["re"] = format_rational(phase.value().re());
    out["im"] = format_rational(phase.value().im());
  } else {
    out["kind"] = "angle";
    out["radians"] = phase.radians();
  }
  return out;
}

UnitPhase phase_from_json(const Json& j, const std::string& where) {
  const Json& kind = need(j, "kind", where);
  try {
    if (kind == "exact")
      return UnitPhase::exact(
          rational_field(need(j, "re", where), where + ".re"),
          rational_field(need(j, "im", where), where + ".im"));
    if (kind == "angle")
      return UnitPhase::angle(
          double_field(need(j, "radians", where), where + ".radians"));
  } catch (const InvalidRange& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".kind", "expected \"exact\" or \"angle\"");
}

Json to_json(const Protocol& prot) {
  Json out;
  out["s"] = prot.s;
  Json phases = Json::array();
  for (const auto& ph : prot.phases) phases.push_back(to_json(ph));
  out["phases"] = std::move(phases);
  return out;
}

Protocol protocol_from_json(const Json& j, const std::string& where) {
  Protocol prot;
  const Json& s = need(j, "s", where);
  if (!s.is_array()) throw ParseError(where + ".s", "expected an array");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].is_number_integer() || (s[i] != 0 && s[i] != 1))
      throw ParseError(where + ".s[" + std::to_string(i) + "]",
                       "expected 0 or 1");
    prot.s.push_back(s[i].get<int>());
  }
  const Json& phases = need(j, "phases", where);
  if (!phases.is_array())
    throw ParseError(where + ".phases", "expected an array");
  for (std::size_t i = 0; i < phases.size(); ++i)
    prot.phases.push_back(phase_from_json(
        phases[i], where + ".phases[" + std::to_string(i) + "]"));
  try {
    prot.validate();
  } catch (const InvalidRange& e) {
    throw ParseError(where, e.what());
  }
  return prot;
}

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Vacuous:
      return "vacuous";
  }
  return "?";
}

}  // namespace

Json to_json(const ConditionReport& report) {
  Json out;
  out["variant"] = report.variant == Variant::Revised ? "revised" : "original";
  out["overall"] = report.overall();
  for (const auto& [key, v] : report.verdicts) {
    Json cond;
    cond["verdict"] = verdict_name(v.verdict);
    if (!v.witness.empty()) cond["witness"] = v.witness;
    out[key] = std::move(cond);
  }
  return out;
}

Json to_json(const ForcedZeroTrace& trace) {
  Json out;
  out["n"] = trace.n;
  out["m"] = trace.m;
  Json steps = Json::array();
  for (const auto& st : trace.steps) {
    Json step;
    step["l_a"] = st.l_a;
    step["l_b"] = st.l_b;
    step["poly"] = std::string(1, st.poly);
    step["j"] = st.j;
    step["k"] = st.k;
    step["justification"] = st.justification;
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  Json zeroed = Json::array();
  for (const auto& [j, k] : trace.final_zeroed)
    zeroed.push_back(Json::array({j, k}));
  out["final_zeroed"] = std::move(zeroed);
  out["covers_box"] = trace.covers_box();
  return out;
}

Json to_json(const DecomposeResult& result) {
  Json out;
  out["decomposable"] = result.decomposable();
  if (result.protocol) out["protocol"] = to_json(*result.protocol);
  Json trace = Json::array();
  for (const auto& note : result.trace) {
    Json entry;
    entry["depth"] = note.depth;
    entry["axis"] = std::string(1, note.axis);
    entry["status"] = note.status;
    trace.push_back(std::move(entry));
  }
  out["trace"] = std::move(trace);
  return out;
}

Json to_json(const InsufficiencyReport& report) {
  Json out;
  out["base_pair"] = to_json(report.base_pair);
  out["base_report"] = to_json(report.base_report);
  out["lifted_pair"] = to_json(report.lifted_pair);
  out["lifted_report"] = to_json(report.lifted_report);
  out["decompose"] = to_json(report.decompose_outcome);
  out["is_counterexample"] = report.is_counterexample;
  out["summary"] = report.summary;
  return out;
}

}  // namespace mqsp
