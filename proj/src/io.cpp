#include "lipfree/io.hpp"

#include "lipfree/error.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace lipfree::io {

namespace {

// Iterator over the input text that records how many characters the parser has consumed.
struct CountingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* at;
  std::size_t* consumed;

  reference operator*() const { return *at; }
  CountingIterator& operator++() {
    ++at;
    ++*consumed;
    return *this;
  }
  CountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const CountingIterator& other) const { return at == other.at; }
};

std::string escape_token(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Builds the DOM and remembers where each value ends, keyed by JSON pointer.
// Floating-point literals are kept as their source text so that decimals stay exact.
class LocatingHandler : public nlohmann::json_sax<Json> {
 public:
  LocatingHandler(Json& root, std::map<std::string, std::size_t>& ends, const std::size_t& consumed)
      : root_(root), ends_(ends), consumed_(consumed) {}

  bool null() override { return put(Json(nullptr)); }
  bool boolean(bool v) override { return put(Json(v)); }
  bool number_integer(number_integer_t v) override { return put(Json(v)); }
  bool number_unsigned(number_unsigned_t v) override { return put(Json(v)); }
  bool number_float(number_float_t, const string_t& text) override { return put(Json(text)); }
  bool string(string_t& v) override { return put(Json(v)); }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override { return open(Json::object()); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(Json::array()); }
  bool end_array() override { return close(); }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& e) override {
    error_position = position;
    error_message = e.what();
    return false;
  }

  std::size_t error_position = 0;
  std::string error_message;

 private:
  struct Frame {
    Json* value;
    std::string pointer;
  };

  Json* insert(Json value, std::string& pointer) {
    if (stack_.empty()) {
      root_ = std::move(value);
      pointer.clear();
      return &root_;
    }
    Frame& top = stack_.back();
    if (top.value->is_array()) {
      pointer = top.pointer + "/" + std::to_string(top.value->size());
      top.value->push_back(std::move(value));
      return &top.value->back();
    }
    pointer = top.pointer + "/" + escape_token(key_);
    if (top.value->contains(key_)) duplicate_ = true;
    Json& slot = (*top.value)[key_];
    slot = std::move(value);
    return &slot;
  }

  bool put(Json value) {
    std::string pointer;
    insert(std::move(value), pointer);
    ends_[pointer] = consumed_;
    return !duplicate_;
  }
  bool open(Json value) {
    std::string pointer;
    Json* slot = insert(std::move(value), pointer);
    ends_[pointer] = consumed_;
    stack_.push_back({slot, pointer});
    return !duplicate_;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  Json& root_;
  std::map<std::string, std::size_t>& ends_;
  const std::size_t& consumed_;
  std::vector<Frame> stack_;
  std::string key_;

 public:
  bool duplicate_ = false;
};

bool token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-';
}

// Parsed text plus a way back from a JSON pointer to a source position.
class Document {
 public:
  explicit Document(std::string_view text) : text_(text) {
    std::size_t consumed = 0;
    LocatingHandler handler(root_, ends_, consumed);
    CountingIterator first{text_.data(), &consumed}, last{text_.data() + text_.size(), &consumed};
    const bool ok = Json::sax_parse(first, last, &handler);
    if (handler.duplicate_) fail_at(consumed, "duplicate key");
    if (!ok) {
      std::string message = handler.error_message;
      if (auto cut = message.find("parse error"); cut != std::string::npos) message = message.substr(cut);
      fail_at(handler.error_position ? handler.error_position - 1 : 0, message.empty() ? "malformed JSON" : message);
    }
  }

  const Json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    auto it = ends_.find(pointer);
    if (it == ends_.end()) throw ParseError(message + " at " + (pointer.empty() ? "/" : pointer), 0, 0);
    fail_at(token_start(it->second), message + " at " + (pointer.empty() ? "/" : pointer));
  }

 private:
  // The parser has consumed the whole token, and for numbers and literals one
  // lookahead character as well; walk back to the first character of the token.
  std::size_t token_start(std::size_t end) const {
    if (end == 0) return 0;
    std::size_t i = std::min(end, text_.size()) - 1;
    if (text_[i] == '{' || text_[i] == '[') return i;
    if (text_[i] == '"') {
      while (i > 0) {
        --i;
        if (text_[i] == '"') {
          std::size_t slashes = 0;
          while (i >= slashes + 1 && text_[i - slashes - 1] == '\\') ++slashes;
          if (slashes % 2 == 0) return i;
        }
      }
      return 0;
    }
    if (!token_char(text_[i]) && i > 0) --i;
    while (i > 0 && token_char(text_[i - 1])) --i;
    return i;
  }

  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")", line,
                     column);
  }

  std::string text_;
  Json root_;
  std::map<std::string, std::size_t> ends_;
};

Rational rational_at(const Document& doc, const Json& value, const std::string& pointer) {
  if (value.is_number_integer()) return Rational(std::to_string(value.get<long long>()));
  if (value.is_number_unsigned()) return Rational(std::to_string(value.get<unsigned long long>()));
  if (!value.is_string()) doc.fail(pointer, "expected a rational");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const Error&) {
    doc.fail(pointer, "malformed rational \"" + value.get<std::string>() + "\"");
  }
}

const Json& member(const Document& doc, const Json& object, const std::string& pointer, const std::string& name) {
  if (!object.is_object()) doc.fail(pointer, "expected an object");
  auto it = object.find(name);
  if (it == object.end()) doc.fail(pointer, "missing \"" + name + "\"");
  return *it;
}

// label -> rational map, either the whole document or its "values" member
std::map<PointIndex, Rational> labelled_values(const Document& doc, const SpacePtr& space, std::string_view kind,
                                               bool& tagged) {
  const Json& root = doc.root();
  if (!root.is_object()) doc.fail("", "expected an object");
  const Json* values = &root;
  std::string base_pointer;
  tagged = root.contains("kind") && root.contains("values") && root.at("kind").is_string();
  if (tagged) {
    if (root.at("kind").get<std::string>() != kind)
      doc.fail("/kind", "expected kind \"" + std::string(kind) + "\", found \"" + root.at("kind").get<std::string>() + "\"");
    for (const auto& [k, v] : root.items())
      if (k != "kind" && k != "values") doc.fail("/" + escape_token(k), "unexpected member \"" + k + "\"");
    values = &root.at("values");
    base_pointer = "/values";
    if (!values->is_object()) doc.fail(base_pointer, "expected an object");
  }
  std::map<PointIndex, Rational> out;
  for (const auto& [label, value] : values->items()) {
    const std::string pointer = base_pointer + "/" + escape_token(label);
    auto index = space->find(label);
    if (!index) throw Error(ErrorCode::UnknownLabel, "unknown label \"" + label + "\"");
    out[*index] = rational_at(doc, value, pointer);
  }
  return out;
}

std::vector<Rational> total_values(const SpacePtr& space, const std::map<PointIndex, Rational>& values,
                                   bool base_optional) {
  std::vector<Rational> out(space->size());
  for (PointIndex x = 0; x < space->size(); ++x) {
    auto it = values.find(x);
    if (it != values.end()) out[x] = it->second;
    else if (!(base_optional && x == space->base()))
      throw Error(ErrorCode::DomainMismatch, "no value for \"" + space->label(x) + "\"", {x});
  }
  return out;
}

Json values_object(const PointedMetricSpace& space, std::span<const Rational> values) {
  Json out = Json::object();
  for (PointIndex x = 0; x < space.size(); ++x) out[space.label(x)] = to_string(values[x]);
  return out;
}

Json rational_json(const Rational& r) { return to_string(r); }

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SpacePtr parse_space(std::string_view text) {
  Document doc(text);
  const Json& root = doc.root();
  const Json& labels = member(doc, root, "", "labels");
  const Json& base = member(doc, root, "", "base");
  const Json& rows = member(doc, root, "", "distances");
  for (const auto& [k, v] : root.items())
    if (k != "labels" && k != "base" && k != "distances") doc.fail("/" + escape_token(k), "unexpected member \"" + k + "\"");
  if (!labels.is_array()) doc.fail("/labels", "expected an array of labels");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) doc.fail("/labels/" + std::to_string(i), "expected a string label");
    names.push_back(labels[i].get<std::string>());
  }
  std::size_t base_index = 0;
  if (base.is_string()) {
    auto it = std::find(names.begin(), names.end(), base.get<std::string>());
    if (it == names.end()) throw Error(ErrorCode::BadBaseIndex, "base \"" + base.get<std::string>() + "\" is not a label");
    base_index = static_cast<std::size_t>(it - names.begin());
  } else if (base.is_number_unsigned() || (base.is_number_integer() && base.get<long long>() >= 0)) {
    base_index = base.get<std::size_t>();
  } else {
    doc.fail("/base", "expected the base label");
  }
  if (!rows.is_array()) doc.fail("/distances", "expected an array of rows");
  std::vector<std::vector<Rational>> dist;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_pointer = "/distances/" + std::to_string(i);
    if (!rows[i].is_array()) doc.fail(row_pointer, "expected a row of distances");
    if (rows[i].size() != names.size())
      doc.fail(row_pointer, "row has " + std::to_string(rows[i].size()) + " entries, expected " +
                                std::to_string(names.size()));
    std::vector<Rational> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      row.push_back(rational_at(doc, rows[i][j], row_pointer + "/" + std::to_string(j)));
    dist.push_back(std::move(row));
  }
  if (dist.size() != names.size())
    doc.fail("/distances", "matrix has " + std::to_string(dist.size()) + " rows, expected " + std::to_string(names.size()));
  return validate_space(names, base_index, dist);
}

FreeElement parse_element(const SpacePtr& space, std::string_view text) {
  Document doc(text);
  if (!doc.root().is_object()) doc.fail("", "expected an object mapping labels to coefficients");
  std::map<PointIndex, Rational> raw;
  for (const auto& [label, value] : doc.root().items()) {
    auto index = space->find(label);
    if (!index) throw Error(ErrorCode::UnknownLabel, "unknown label \"" + label + "\"");
    raw[*index] = rational_at(doc, value, "/" + escape_token(label));
  }
  return FreeElement(space, FreeElement::Coefficients(raw.begin(), raw.end()));
}

LipFunction parse_function(const SpacePtr& space, std::string_view text) {
  Document doc(text);
  bool tagged = false;
  auto values = labelled_values(doc, space, "lipschitz", tagged);
  return LipFunction(space, total_values(space, values, true));
}

WeightFunction parse_weight(const SpacePtr& space, std::string_view text) {
  Document doc(text);
  bool tagged = false;
  auto values = labelled_values(doc, space, "weight", tagged);
  if (!tagged) doc.fail("", "weight files need \"kind\": \"weight\"");
  return WeightFunction(space, total_values(space, values, false));
}

PartialFunction parse_partial(const SpacePtr& space, std::string_view text) {
  Document doc(text);
  bool tagged = false;
  auto values = labelled_values(doc, space, "partial", tagged);
  return PartialFunction(space, std::move(values));
}

Json to_json(const PointedMetricSpace& space) {
  Json distances = Json::array();
  for (PointIndex i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (PointIndex j = 0; j < space.size(); ++j) row.push_back(to_string(space.dist(i, j)));
    distances.push_back(std::move(row));
  }
  return Json{{"labels", space.labels()}, {"base", space.label(space.base())}, {"distances", std::move(distances)}};
}

Json to_json(const FreeElement& mu) {
  Json out = Json::object();
  for (const auto& [p, a] : mu.coeffs()) out[mu.space().label(p)] = to_string(a);
  return out;
}

Json to_json(const LipFunction& f) { return Json{{"kind", "lipschitz"}, {"values", values_object(f.space(), f.values())}}; }

Json to_json(const WeightFunction& h) { return Json{{"kind", "weight"}, {"values", values_object(h.space(), h.values())}}; }

Json to_json(const PartialFunction& f) {
  Json values = Json::object();
  for (const auto& [x, v] : f.values()) values[f.space().label(x)] = to_string(v);
  return Json{{"kind", "partial"}, {"values", std::move(values)}};
}

Json to_json(const PointedMetricSpace& space, const PointSet& points) {
  Json out = Json::array();
  for (PointIndex x : points) out.push_back(space.label(x));
  return out;
}

Json to_json(const PointedMetricSpace& space, const Molecule& m) { return Json::array({space.label(m.p), space.label(m.q)}); }

Json to_json(const PointedMetricSpace& space, const Decomposition& decomposition) {
  Json out = Json::array();
  for (const auto& w : decomposition)
    out.push_back(Json::array({space.label(w.molecule.p), space.label(w.molecule.q), to_string(w.coeff)}));
  return out;
}

Json to_json(const NormCertificate& certificate) {
  const auto& space = certificate.dual_witness.space();
  return Json{{"value", rational_json(certificate.value)},
              {"dual_witness", to_json(certificate.dual_witness)},
              {"primal_witness", to_json(space, certificate.primal_witness)}};
}

Json to_json(const FaceReport& face) {
  const auto& space = face.norming_function.space();
  Json tight = Json::array();
  for (const auto& m : face.tight_molecules) tight.push_back(to_json(space, m));
  Json out{{"norming_function", to_json(face.norming_function)},
           {"tight_molecules", std::move(tight)},
           {"nominal_normer", to_json(face.nominal_normer)},
           {"is_unique_normer", face.is_unique_normer},
           {"face_dimension", face.face_dimension}};
  out["sample_distinct_normer"] = face.sample_distinct_normer ? to_json(*face.sample_distinct_normer) : Json(nullptr);
  return out;
}

Json to_json(const Segment& segment, const PointedMetricSpace& space) {
  return Json{{"pair", Json::array({space.label(segment.p), space.label(segment.q)})},
              {"epsilon", to_string(segment.epsilon)},
              {"members", to_json(space, segment.members)},
              {"trivial", segment.trivial()}};
}

Json to_json(const ExposednessVerdict& verdict) {
  const auto& space = verdict.face.norming_function.space();
  Json out{{"molecule", to_json(space, verdict.molecule)},
           {"segment", to_json(verdict.segment, space)},
           {"segment_trivial", verdict.segment_trivial},
           {"verdict", std::string(verdict_name(verdict.verdict))},
           {"face", to_json(verdict.face)}};
  out["exposing_function"] = verdict.exposing_function ? to_json(*verdict.exposing_function) : Json(nullptr);
  if (verdict.counterexample_decomposition) {
    const auto& d = *verdict.counterexample_decomposition;
    out["counterexample_decomposition"] = Json{{"interior", space.label(d.interior)},
                                               {"u", to_json(d.u)},
                                               {"v", to_json(d.v)},
                                               {"u_norm", to_json(d.u_norm)},
                                               {"v_norm", to_json(d.v_norm)}};
  } else {
    out["counterexample_decomposition"] = nullptr;
  }
  return out;
}

Json to_json(const PerturbationWitness& w) {
  const auto& space = w.lambda.space();
  Json chosen = Json::array(), c = Json::array();
  for (PointIndex p : w.chosen_points) chosen.push_back(space.label(p));
  for (const auto& ci : w.c) c.push_back(to_string(ci));
  return Json{{"lambda", to_json(w.lambda)},
              {"mu", to_json(w.mu)},
              {"f_star", to_json(w.f_star)},
              {"extension", to_json(w.extension)},
              {"k", to_json(space, w.k)},
              {"cell", to_json(space, w.cell)},
              {"chosen_points", std::move(chosen)},
              {"epsilon", to_string(w.epsilon)},
              {"r", to_string(w.r)},
              {"c", std::move(c)},
              {"h", to_json(w.h)},
              {"v", to_json(w.v)},
              {"norm", to_string(w.norm)}};
}

Json to_json(const checks::CriterionResult& result, bool with_timing) {
  Json out{{"number", result.number},
           {"title", result.title},
           {"passed", result.passed},
           {"instances", result.instances},
           {"failure_count", result.failure_count},
           {"failures", result.failures}};
  if (with_timing) out["seconds"] = result.seconds;
  return out;
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

std::string serialize(const PointedMetricSpace& space) { return dump(to_json(space)); }
std::string serialize(const FreeElement& mu) { return dump(to_json(mu)); }
std::string serialize(const LipFunction& f) { return dump(to_json(f)); }
std::string serialize(const WeightFunction& h) { return dump(to_json(h)); }
std::string serialize(const PartialFunction& f) { return dump(to_json(f)); }

Json report(std::string_view command, Json body) {
  return Json{{"schema_version", kSchemaVersion}, {"command", std::string(command)}, {"result", std::move(body)}};
}

}  // namespace lipfree::io
