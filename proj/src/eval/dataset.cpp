#include "symclust/eval/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "symclust/errors.hpp"

namespace symclust::eval {

using json = nlohmann::json;
using lang::SnipType;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw LoadError(path + ": " + why);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path + "." + key, "missing required field");
  return *it;
}

std::string str_field(const json& obj, const std::string& path, const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_string()) bad(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double num_field(const json& obj, const std::string& path, const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_number()) bad(path + "." + key, "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) bad(path + "." + key, "expected a finite number");
  return d;
}

long long int_field(const json& obj, const std::string& path, const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
  return v.get<long long>();
}

SnipType parse_type(const json& v, const std::string& path) {
  if (!v.is_string()) bad(path, "expected a type string");
  std::string s = v.get<std::string>();
  if (s == "int") return SnipType::Int;
  if (s == "bool") return SnipType::Bool;
  if (s == "[int]") return SnipType::IntArray;
  bad(path, "unknown type \"" + s + "\" (expected int, bool or [int])");
}

interp::Value parse_value(const json& v, SnipType want, const std::string& path) {
  switch (want) {
    case SnipType::Int:
      if (!v.is_number_integer()) bad(path, "expected an integer");
      return interp::Value::of_int(v.get<long long>());
    case SnipType::Bool:
      if (!v.is_boolean()) bad(path, "expected a boolean");
      return interp::Value::of_bool(v.get<bool>());
    case SnipType::IntArray: {
      if (!v.is_array()) bad(path, "expected an array of integers");
      std::vector<lang::BigInt> elems;
      for (size_t i = 0; i < v.size(); ++i) {
        const json& e = v[i];
        if (!e.is_number_integer())
          bad(path + "[" + std::to_string(i) + "]", "expected an integer");
        elems.emplace_back(e.get<long long>());
      }
      return interp::Value::of_array(std::move(elems));
    }
  }
  bad(path, "unreachable type");
}

metrics::ResponseProb parse_prob(const json& obj, const std::string& path,
                                 const std::string& id) {
  metrics::ResponseProb prob;
  prob.id = id;
  prob.total_logprob = num_field(obj, path, "logprob");
  prob.token_count = int_field(obj, path, "tokens");
  if (prob.token_count < 1) bad(path + ".tokens", "token count must be at least 1");
  return prob;
}

}  // namespace

std::vector<ProblemRecord> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(path + ": " + e.what());
  }

  const json& problems = field(doc, "$", "problems");
  if (!problems.is_array()) bad("$.problems", "expected an array");

  std::vector<ProblemRecord> out;
  std::set<std::string> problem_ids;
  for (size_t pi = 0; pi < problems.size(); ++pi) {
    const std::string ppath = "$.problems[" + std::to_string(pi) + "]";
    const json& p = problems[pi];
    ProblemRecord rec;
    rec.id = str_field(p, ppath, "id");
    if (rec.id.empty()) bad(ppath + ".id", "problem id must be nonempty");
    if (!problem_ids.insert(rec.id).second)
      bad(ppath + ".id", "duplicate problem id \"" + rec.id + "\"");

    const json& entry = field(p, ppath, "entry");
    rec.signature.name = str_field(entry, ppath + ".entry", "name");
    const json& params = field(entry, ppath + ".entry", "params");
    if (!params.is_array()) bad(ppath + ".entry.params", "expected an array");
    for (size_t i = 0; i < params.size(); ++i) {
      const std::string prm = ppath + ".entry.params[" + std::to_string(i) + "]";
      rec.signature.params.emplace_back(str_field(params[i], prm, "name"),
                                        parse_type(field(params[i], prm, "type"),
                                                   prm + ".type"));
    }
    rec.signature.return_type =
        parse_type(field(entry, ppath + ".entry", "return"), ppath + ".entry.return");

    const json& responses = field(p, ppath, "responses");
    if (!responses.is_array() || responses.empty())
      bad(ppath + ".responses", "expected a nonempty array");
    std::set<std::string> response_ids;
    auto claim_id = [&](const std::string& id, const std::string& where) {
      if (id.empty()) bad(where, "response id must be nonempty");
      if (!response_ids.insert(id).second)
        bad(where, "duplicate response id \"" + id + "\"");
    };
    for (size_t ri = 0; ri < responses.size(); ++ri) {
      const std::string rpath = ppath + ".responses[" + std::to_string(ri) + "]";
      const json& r = responses[ri];
      Response resp;
      std::string id = str_field(r, rpath, "id");
      claim_id(id, rpath + ".id");
      resp.snippet = {id, str_field(r, rpath, "source")};
      resp.prob = parse_prob(r, rpath, id);
      if (r.contains("followups")) {
        const json& fups = r["followups"];
        if (!fups.is_array()) bad(rpath + ".followups", "expected an array");
        for (size_t fi = 0; fi < fups.size(); ++fi) {
          const std::string fpath = rpath + ".followups[" + std::to_string(fi) + "]";
          FollowupResponse f;
          std::string fid = str_field(fups[fi], fpath, "id");
          claim_id(fid, fpath + ".id");
          f.snippet = {fid, str_field(fups[fi], fpath, "source")};
          f.prob = parse_prob(fups[fi], fpath, fid);
          resp.followups.push_back(std::move(f));
        }
      }
      rec.responses.push_back(std::move(resp));
    }

    rec.top_ranked = str_field(p, ppath, "top_ranked");
    bool top_found = false;
    for (const Response& r : rec.responses)
      if (r.snippet.id == rec.top_ranked) top_found = true;
    if (!top_found)
      bad(ppath + ".top_ranked", "\"" + rec.top_ranked + "\" is not a response id");

    const json& tests = field(p, ppath, "tests");
    if (!tests.is_array() || tests.empty())
      bad(ppath + ".tests", "expected a nonempty array");
    for (size_t ti = 0; ti < tests.size(); ++ti) {
      const std::string tpath = ppath + ".tests[" + std::to_string(ti) + "]";
      const json& t = tests[ti];
      const json& input = field(t, tpath, "input");
      if (!input.is_array()) bad(tpath + ".input", "expected an array");
      if (input.size() != rec.signature.params.size())
        bad(tpath + ".input", "arity mismatch: entry takes " +
                                  std::to_string(rec.signature.params.size()) +
                                  " arguments, test provides " +
                                  std::to_string(input.size()));
      interp::TestCase tc;
      for (size_t ai = 0; ai < input.size(); ++ai)
        tc.inputs.push_back(parse_value(input[ai], rec.signature.params[ai].second,
                                        tpath + ".input[" + std::to_string(ai) + "]"));
      tc.expected = parse_value(field(t, tpath, "expected"), rec.signature.return_type,
                                tpath + ".expected");
      rec.tests.push_back(std::move(tc));
    }

    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace symclust::eval
