#include "rankmix/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rankmix/errors.hpp"

namespace rankmix {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

namespace {

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw IoError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const char* what) {
  if (!obj.is_object()) throw IoError(std::string(what) + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.contains(key)) throw IoError(std::string(what) + ": unknown field \"" + key + "\"");
}

const json& field(const json& obj, const char* key, const char* what) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw IoError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

double number(const json& v, const char* key) {
  if (!v.is_number()) throw IoError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& v, const char* key) {
  if (!v.is_number_integer()) throw IoError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Permutation permutation_from(const json& v) {
  if (v.is_string()) return Permutation::parse(v.get<std::string>());
  if (v.is_array()) {
    std::vector<int> image;
    for (const auto& e : v) image.push_back(integer(e, "perm"));
    return Permutation::from_one_line(image);
  }
  throw IoError("field \"perm\" must be a string or an array");
}

}  // namespace

SparseRankingMixture mixture_from_json(std::string_view text) {
  const json doc = parse(text, "mixture");
  only_keys(doc, {"n", "epsilon", "atoms"}, "mixture");
  const int n = integer(field(doc, "n", "mixture"), "n");
  std::optional<double> epsilon;
  if (doc.contains("epsilon")) epsilon = number(doc["epsilon"], "epsilon");
  const json& list = field(doc, "atoms", "mixture");
  if (!list.is_array()) throw IoError("mixture: \"atoms\" must be an array");
  std::vector<Atom> atoms;
  for (const auto& a : list) {
    only_keys(a, {"perm", "w"}, "atom");
    atoms.push_back(Atom{permutation_from(field(a, "perm", "atom")), number(field(a, "w", "atom"), "w")});
  }
  return SparseRankingMixture(n, std::move(atoms), epsilon);
}

std::string mixture_to_json(const SparseRankingMixture& f) {
  json doc;
  doc["n"] = f.n();
  if (f.epsilon()) doc["epsilon"] = *f.epsilon();
  json atoms = json::array();
  for (const auto& a : f.atoms()) atoms.push_back(json{{"perm", a.perm.to_string()}, {"w", a.weight}});
  doc["atoms"] = std::move(atoms);
  return doc.dump(2) + "\n";
}

NoiseModel noise_from_json(std::string_view text) {
  const json doc = parse(text, "noise");
  const json& kind = field(doc, "model", "noise");
  if (!kind.is_string()) throw IoError("noise: \"model\" must be a string");
  const std::string name = kind.get<std::string>();
  if (name == "heat") {
    only_keys(doc, {"model", "n", "t"}, "noise");
    return NoiseModel::heat_kernel(integer(field(doc, "n", "noise"), "n"), number(field(doc, "t", "noise"), "t"));
  }
  if (name == "mallows") {
    only_keys(doc, {"model", "n", "theta"}, "noise");
    return NoiseModel::cayley_mallows(integer(field(doc, "n", "noise"), "n"),
                                      number(field(doc, "theta", "noise"), "theta"));
  }
  if (name == "symmetric") {
    only_keys(doc, {"model", "n", "pbar"}, "noise");
    const json& p = field(doc, "pbar", "noise");
    if (!p.is_array()) throw IoError("noise: \"pbar\" must be an array");
    std::vector<double> pbar;
    for (const auto& v : p) pbar.push_back(number(v, "pbar"));
    return NoiseModel::symmetric(integer(field(doc, "n", "noise"), "n"), std::move(pbar));
  }
  throw IoError("noise: unknown model \"" + name + "\" (expected heat, mallows or symmetric)");
}

std::string noise_to_json(const NoiseModel& model) {
  json doc{{"model", model.name()}, {"n", model.n()}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SymmetricNoise>) doc["pbar"] = p.pbar;
        if constexpr (std::is_same_v<T, HeatKernelNoise>) doc["t"] = p.t;
        if constexpr (std::is_same_v<T, CayleyMallowsNoise>) doc["theta"] = p.theta;
      },
      model.params());
  return doc.dump(2) + "\n";
}

std::vector<Permutation> read_samples(std::istream& in, int expected_n) {
  std::vector<Permutation> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Permutation p;
    try {
      p = Permutation::parse(line);
    } catch (const ContractError& e) {
      throw IoError("samples line " + std::to_string(lineno) + ": " + e.what());
    }
    if (expected_n == 0) expected_n = p.size();
    if (p.size() != expected_n)
      throw IoError("samples line " + std::to_string(lineno) + ": expected a permutation of " +
                    std::to_string(expected_n));
    out.push_back(std::move(p));
  }
  if (in.bad()) throw IoError("samples: read failed");
  return out;
}

void write_samples(std::ostream& out, std::span<const Permutation> samples) {
  for (const auto& p : samples) out << p.to_string() << '\n';
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(std::span<const std::string> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string tuple_to_string(std::span<const int> tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(tuple[i]);
  }
  return out;
}

void write_marginal_csv(std::ostream& out, const MarginalMatrix& m) {
  const auto& idx = m.indexer();
  std::vector<std::string> fields{"ibar"};
  for (std::size_t b = 0; b < idx.size(); ++b) fields.push_back(tuple_to_string(idx.tuple(b)));
  out << csv_row(fields);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    fields.assign(1, tuple_to_string(idx.tuple(a)));
    for (std::size_t b = 0; b < idx.size(); ++b) {
      std::ostringstream v;
      v << std::setprecision(17) << m.entries()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      fields.push_back(v.str());
    }
    out << csv_row(fields);
  }
}

}  // namespace rankmix
