// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "wce/error.hpp"
#include "wce/harness.hpp"

namespace wce {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& msg) {
  throw Error(ErrorKind::ParseError, msg);
}

[[noreturn]] void field_fail(const std::string& field, const std::string& msg) {
  parse_fail("field '" + field + "': " + msg);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text,
                                             std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) field_fail(where, "expected a number");
  return v.get<double>();
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) {
    if (v.is_number_integer() && v.get<long long>() >= 0)
      return static_cast<std::size_t>(v.get<long long>());
    field_fail(where, "expected a nonnegative integer index");
  }
  return v.get<std::size_t>();
}

const json& array_field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) field_fail(name, "missing");
  if (!it->is_array()) field_fail(name, "expected an array");
  return *it;
}

std::vector<cplx> complex_array(const json& doc, const char* name,
                                std::size_t n) {
  const json& arr = array_field(doc, name);
  if (arr.size() != n) {
    std::ostringstream os;
    os << "has " << arr.size() << " entries, expected " << n;
    field_fail(name, os.str());
  }
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2) field_fail(where, "expected [re, im]");
    out[i] = {as_number(p[0], where), as_number(p[1], where)};
  }
  return out;
}

ordered_json complex_json(const MeasurableFunction& f) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    arr.push_back({f[i].real(), f[i].imag()});
  return arr;
}

}  // namespace

std::string serialize_instance(const InstanceRecord& rec) {
  const auto& inst = rec.instance;
  const auto& space = inst.space();
  ordered_json doc;
  doc["weights"] = std::vector<double>(space.weights().begin(),
                                       space.weights().end());
  doc["partition"] = inst.partition().blocks();
  doc["u"] = complex_json(inst.u());
  doc["w"] = complex_json(inst.w());
  if (rec.phi) doc["phi"] = rec.phi->images();
  if (!space.labels().empty()) doc["labels"] = space.labels();
  return doc.dump(1) + "\n";
}

InstanceRecord parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": malformed JSON ("
       << e.what() << ")";
    parse_fail(os.str());
  }
  if (!doc.is_object()) parse_fail("instance document must be a JSON object");

  static const std::vector<std::string> known = {"weights", "partition", "u",
                                                 "w",       "phi",       "labels"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      field_fail(key, "unknown field");
  }

  const json& wj = array_field(doc, "weights");
  std::vector<double> weights;
  for (std::size_t i = 0; i < wj.size(); ++i)
    weights.push_back(as_number(wj[i], "weights[" + std::to_string(i) + "]"));

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& lj = array_field(doc, "labels");
    for (std::size_t i = 0; i < lj.size(); ++i) {
      if (!lj[i].is_string())
        field_fail("labels[" + std::to_string(i) + "]", "expected a string");
      labels.push_back(lj[i].get<std::string>());
    }
  }

  std::optional<FiniteMeasureSpace> space;
  try {
    space = FiniteMeasureSpace::make(std::move(weights), std::move(labels));
  } catch (const Error& e) {
    const bool label_issue = e.kind() == ErrorKind::SpaceMismatch ||
                             e.kind() == ErrorKind::ConfigInvalid;
    field_fail(label_issue ? "labels" : "weights", e.what());
  }
  const std::size_t n = space->size();

  const json& pj = array_field(doc, "partition");
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t b = 0; b < pj.size(); ++b) {
    const std::string where = "partition[" + std::to_string(b) + "]";
    if (!pj[b].is_array()) field_fail(where, "expected an array of indices");
    std::vector<std::size_t> blk;
    for (std::size_t j = 0; j < pj[b].size(); ++j)
      blk.push_back(as_index(pj[b][j], where));
    blocks.push_back(std::move(blk));
  }
  std::optional<Partition> partition;
  try {
    partition = Partition::make(*space, std::move(blocks));
  } catch (const Error& e) {
    field_fail("partition", e.what());
  }

  auto u = complex_array(doc, "u", n);
  auto w = complex_array(doc, "w", n);

  std::optional<PointMap> phi;
  if (doc.contains("phi")) {
    const json& fj = array_field(doc, "phi");
    if (fj.size() != n) field_fail("phi", "must have one image per point");
    std::vector<std::size_t> images;
    for (std::size_t i = 0; i < n; ++i)
      images.push_back(as_index(fj[i], "phi[" + std::to_string(i) + "]"));
    try {
      phi.emplace(*space, std::move(images));
    } catch (const Error& e) {
      field_fail("phi", e.what());
    }
  }

  try {
    return {WCEInstance(*partition, MeasurableFunction(*space, std::move(u)),
                        MeasurableFunction(*space, std::move(w))),
            std::move(phi)};
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

InstanceRecord load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void save_instance(const InstanceRecord& rec, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << serialize_instance(rec);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

std::string instance_digest(const InstanceRecord& rec) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize_instance(rec)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wce
