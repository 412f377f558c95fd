#include <openssl/evp.h>

#include <cstdio>
#include <json.hpp>

#include "ntacert/certificate.hpp"

namespace ntacert::cert {

using json = nlohmann::ordered_json;

std::string formula_digest(const Formula& formula) {
  const std::string text = print_formula(normalize(formula));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string serialize(const Certificate& cert) {
  json doc;
  doc["version"] = kVersion;
  doc["formula_digest"] = cert.formula_digest;
  doc["sigma"] = cert.sigma;
  json nu = json::object();
  for (const auto& [name, value] : cert.nu) nu[name] = ia::format_hex(value);
  doc["nu"] = nu;
  json beta = json::array();
  for (const auto& box : cert.beta) {
    json b = json::object();
    for (std::size_t i = 0; i < box.dim(); ++i)
      b[box.names()[i]] = json::array({ia::format_hex(box[i].lo), ia::format_hex(box[i].hi)});
    beta.push_back(b);
  }
  doc["beta"] = beta;
  return doc.dump(2) + "\n";
}

namespace {

double hex_field(const json& j, const std::string& where) {
  if (!j.is_string()) throw CertificateError(where + ": expected a hex float string");
  const std::string& text = j.get_ref<const std::string&>();
  const std::size_t skip = !text.empty() && (text[0] == '-' || text[0] == '+');
  if (text.compare(skip, 2, "0x") != 0) throw CertificateError(where + ": '" + text + "' is not a hex float");
  try {
    return ia::parse_hex(text);
  } catch (const std::exception&) {
    throw CertificateError(where + ": malformed hex float '" + j.get<std::string>() + "'");
  }
}

}  // namespace

Certificate deserialize(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateError(std::string("certificate parse error: ") + e.what());
  }
  if (!doc.is_object()) throw CertificateError("certificate must be a JSON object");
  for (const char* key : {"version", "formula_digest", "sigma", "nu", "beta"})
    if (!doc.contains(key)) throw CertificateError(std::string("missing field '") + key + "'");
  if (!doc["version"].is_string() || doc["version"].get<std::string>() != kVersion)
    throw CertificateError("unsupported certificate version " + doc["version"].dump());
  Certificate c;
  if (!doc["formula_digest"].is_string()) throw CertificateError("formula_digest must be a string");
  c.formula_digest = doc["formula_digest"].get<std::string>();
  if (!doc["sigma"].is_array()) throw CertificateError("sigma must be an array");
  for (const auto& s : doc["sigma"]) {
    if (!s.is_number_unsigned()) throw CertificateError("sigma entries must be non-negative integers");
    c.sigma.push_back(s.get<std::size_t>());
  }
  if (!doc["nu"].is_object()) throw CertificateError("nu must be an object");
  for (const auto& [name, value] : doc["nu"].items()) c.nu[name] = hex_field(value, "nu." + name);
  if (!doc["beta"].is_array()) throw CertificateError("beta must be an array");
  if (doc["beta"].empty()) throw CertificateError("beta must contain at least one box");
  for (const auto& b : doc["beta"]) {
    if (!b.is_object()) throw CertificateError("beta entries must be objects");
    std::vector<std::string> names;
    std::vector<ia::Interval> ivs;
    for (const auto& [name, iv] : b.items()) {
      if (!iv.is_array() || iv.size() != 2) throw CertificateError("beta." + name + ": expected [lo, hi]");
      const double lo = hex_field(iv[0], "beta." + name), hi = hex_field(iv[1], "beta." + name);
      if (!(lo <= hi)) throw CertificateError("beta." + name + ": lo > hi");
      names.push_back(name);
      ivs.push_back({lo, hi});
    }
    c.beta.emplace_back(std::move(names), std::move(ivs));
  }
  return c;
}

PreparedSystem prepare_system(const Formula& formula, const LiteralSelector& sigma, const PartialAssignment& nu) {
  SystemPair sp = partition_selected(formula, sigma, nu);
  PreparedSystem out;
  for (auto& e : sp.equations) {
    if (e.is_ground()) out.ground_equations.push_back(std::move(e));
    else out.equations.push_back(std::move(e));
  }
  out.inequalities = std::move(sp.inequalities);
  out.domain = std::move(sp.domain);
  out.warnings = std::move(sp.warnings);
  return out;
}

bool ground_equation_holds(const Term& g) {
  const ia::Interval v = ia::eval_interval(g, ia::NamedBox{});
  return v.lo == 0.0 && v.hi == 0.0;
}

bool inequality_holds(const Inequality& g, const ia::NamedBox& box) {
  const ia::Interval v = ia::eval_interval(g.term, box);
  return g.strict ? v.hi < 0.0 : v.hi <= 0.0;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::Invalid: return "invalid";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

}  // namespace ntacert::cert
