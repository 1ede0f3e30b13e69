#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairdiv/errors.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/reduction_map.hpp"

// JSON instance document:
//
//   { "kind": "additive" | "max-atomic",
//     "agents": ["a1", ...], "resources": ["o1", ...],
//     "matrix": [[1, "1/2", ...], ...],                 n rows of m entries
//     "allocation": {"o1": "a1", "o2": null, ...},      optional
//     "roles": {"agents": {"a1": {...}}, "resources": {...}} }   optional
//
// Matrix entries are JSON integers or "p/q" strings. Floating-point numbers
// are rejected. A role entry is {"role": name} plus optional 1-based
// "clause" and "variable" and a DIMACS-style "literal".

namespace fairdiv {

using Json = nlohmann::json;

struct InstanceDocument {
  Instance instance;
  std::optional<Allocation> allocation;
  std::optional<ReductionMap> roles;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

namespace detail {

inline const Json& member(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError("expected an object", path);
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field '") + key + "'", path);
  return *it;
}

inline std::vector<std::string> id_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError("expected an array of ids", path);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_string()) throw FormatError("id must be a string", path + "/" + std::to_string(k));
    out.push_back(j[k].get<std::string>());
  }
  return out;
}

inline Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                  : Rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const FormatError& e) {
      throw FormatError(e.what(), path);
    }
  }
  if (j.is_number_float()) throw FormatError("floating-point number; use an integer or \"p/q\"", path);
  throw FormatError("expected an integer or a \"p/q\" string", path);
}

inline Json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return Json(r.get_num().get_si());
  return Json(format_rational(r));
}

inline std::optional<std::size_t> optional_index(const Json& entry, const char* key,
                                                 const std::string& path) {
  auto it = entry.find(key);
  if (it == entry.end()) return std::nullopt;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
    throw FormatError(std::string("'") + key + "' must be a positive integer", path + "/" + key);
  }
  return static_cast<std::size_t>(it->get<std::int64_t>() - 1);
}

template <class Role, std::size_t N>
std::vector<RoleTag<Role>> roles_from_json(const Json& j, const std::vector<std::string>& ids,
                                           const std::string_view (&names)[N],
                                           const std::string& path) {
  if (!j.is_object()) throw FormatError("expected an object keyed by id", path);
  std::vector<RoleTag<Role>> out;
  for (const auto& id : ids) {
    const std::string p = path + "/" + id;
    const Json& entry = member(j, id.c_str(), path);
    const Json& name = member(entry, "role", p);
    if (!name.is_string()) throw FormatError("role must be a string", p + "/role");
    RoleTag<Role> tag{};
    try {
      tag.role = role_from_string<Role>(name.get<std::string>(), names);
    } catch (const FormatError& e) {
      throw FormatError(e.what(), p + "/role");
    }
    tag.link.clause = optional_index(entry, "clause", p);
    tag.link.variable = optional_index(entry, "variable", p);
    if (auto it = entry.find("literal"); it != entry.end()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() == 0) {
        throw FormatError("'literal' must be a non-zero integer", p + "/literal");
      }
      const auto lit = it->get<std::int64_t>();
      tag.link.literal = lit > 0 ? Literal::pos(static_cast<std::size_t>(lit - 1))
                                 : Literal::neg(static_cast<std::size_t>(-lit - 1));
    }
    out.push_back(std::move(tag));
  }
  if (j.size() != ids.size()) throw FormatError("roles given for unknown ids", path);
  return out;
}

template <class Role>
Json roles_to_json(const std::vector<RoleTag<Role>>& tags, const std::vector<std::string>& ids) {
  Json out = Json::object();
  for (std::size_t k = 0; k < tags.size(); ++k) {
    Json entry = {{"role", std::string(to_string(tags[k].role))}};
    const auto& link = tags[k].link;
    if (link.clause) entry["clause"] = *link.clause + 1;
    if (link.variable) entry["variable"] = *link.variable + 1;
    if (link.literal) entry["literal"] = link.literal->dimacs();
    out[ids[k]] = std::move(entry);
  }
  return out;
}

}  // namespace detail

inline InstanceDocument document_from_json(const Json& doc) {
  const Json& kind_j = detail::member(doc, "kind", "");
  UtilityKind kind;
  if (kind_j == "additive") {
    kind = UtilityKind::Additive;
  } else if (kind_j == "max-atomic") {
    kind = UtilityKind::MaxAtomic;
  } else {
    throw FormatError("unknown kind " + kind_j.dump() + " (expected \"additive\" or \"max-atomic\")",
                      "/kind");
  }
  auto agents = detail::id_list(detail::member(doc, "agents", ""), "/agents");
  auto resources = detail::id_list(detail::member(doc, "resources", ""), "/resources");

  const Json& mat = detail::member(doc, "matrix", "");
  if (!mat.is_array() || mat.size() != agents.size()) {
    throw FormatError("matrix must have one row per agent (" + std::to_string(agents.size()) + ")",
                      "/matrix");
  }
  std::vector<std::vector<Rational>> matrix;
  for (std::size_t i = 0; i < mat.size(); ++i) {
    const std::string row_path = "/matrix/" + std::to_string(i);
    if (!mat[i].is_array() || mat[i].size() != resources.size()) {
      throw FormatError("row must have one entry per resource (" +
                            std::to_string(resources.size()) + ")",
                        row_path);
    }
    auto& row = matrix.emplace_back();
    for (std::size_t j = 0; j < mat[i].size(); ++j) {
      const std::string cell = row_path + "/" + std::to_string(j);
      row.push_back(detail::rational_from_json(mat[i][j], cell));
      if (kind == UtilityKind::MaxAtomic && sgn(row.back()) < 0) {
        throw FormatError("negative max-atomic demand", cell);
      }
    }
  }

  std::optional<Instance> instance;
  try {
    instance.emplace(agents, resources, kind, std::move(matrix));
  } catch (const ContractViolation& e) {
    throw FormatError(e.what(), "");
  }
  InstanceDocument out{*instance, std::nullopt, std::nullopt};

  if (auto it = doc.find("allocation"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw FormatError("expected an object resource -> agent", "/allocation");
    Allocation a(resources.size());
    for (const auto& [res, owner] : it->items()) {
      const std::string p = "/allocation/" + res;
      const auto r = instance->resource_index(res);
      if (!r) throw FormatError("unknown resource", p);
      if (owner.is_null()) continue;
      if (!owner.is_string()) throw FormatError("owner must be an agent id or null", p);
      const auto i = instance->agent_index(owner.get<std::string>());
      if (!i) throw FormatError("unknown agent '" + owner.get<std::string>() + "'", p);
      a.assign(*r, *i);
    }
    out.allocation = std::move(a);
  }

  if (auto it = doc.find("roles"); it != doc.end() && !it->is_null()) {
    ReductionMap map;
    map.agents = detail::roles_from_json<AgentRole>(detail::member(*it, "agents", "/roles"), agents,
                                                    kAgentRoleNames, "/roles/agents");
    map.resources = detail::roles_from_json<ResourceRole>(
        detail::member(*it, "resources", "/roles"), resources, kResourceRoleNames,
        "/roles/resources");
    out.roles = std::move(map);
  }
  return out;
}

/// Parses a document. Errors are FormatError with a JSON-pointer path.
inline InstanceDocument parse_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(doc);
}

inline Json allocation_to_json(const Instance& instance, const Allocation& alloc) {
  Json out = Json::object();
  for (std::size_t r = 0; r < alloc.resource_count(); ++r) {
    const auto& owner = alloc.owner(r);
    out[instance.resources()[r]] = owner ? Json(instance.agents()[*owner]) : Json(nullptr);
  }
  return out;
}

inline Json document_to_json(const InstanceDocument& doc) {
  const Instance& in = doc.instance;
  Json matrix = Json::array();
  for (std::size_t i = 0; i < in.agent_count(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < in.resource_count(); ++j) {
      row.push_back(detail::rational_to_json(in.value(i, j)));
    }
    matrix.push_back(std::move(row));
  }
  Json out = {{"kind", to_string(in.kind())},
              {"agents", in.agents()},
              {"resources", in.resources()},
              {"matrix", std::move(matrix)}};
  if (doc.allocation) out["allocation"] = allocation_to_json(in, *doc.allocation);
  if (doc.roles) {
    out["roles"] = {{"agents", detail::roles_to_json(doc.roles->agents, in.agents())},
                    {"resources", detail::roles_to_json(doc.roles->resources, in.resources())}};
  }
  return out;
}

inline std::string serialize_instance(const InstanceDocument& doc) {
  return document_to_json(doc).dump(2) + "\n";
}

}  // namespace fairdiv
