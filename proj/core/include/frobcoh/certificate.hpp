#pragma once

// Verification DAGs for the nonvanishing of H^5(X, omega_X^2), the Kodaira
// violation it gives on the Fano X, and the consequences for the affine cone
// Z = C_a(X, omega_X^-1).
//
// COMPUTED nodes carry a recipe; replay() recomputes their payload from it.
// RULE nodes hold when their own side condition holds and every input holds.
// ASSUMED nodes stand for literature results and carry a citation.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "frobcoh/bundle_cohomology.hpp"
#include "frobcoh/les_solver.hpp"

namespace frobcoh {

enum class NodeStatus { Computed, Rule, Assumed };
std::string_view to_string(NodeStatus status);

struct Anchor {
  std::string location;
  std::string quote;
};

struct CertificateNode {
  std::string id;
  NodeStatus status = NodeStatus::Computed;
  std::string statement;
  Anchor anchor;
  std::vector<std::string> inputs;
  std::map<std::string, std::int64_t> dims;
  std::map<std::string, DimInterval> bounds;
  bool holds = true;
  std::string citation;
  nlohmann::json recipe;
};

struct Certificate {
  std::string kind;
  std::uint32_t p = 2;
  int n = 3;
  std::vector<CertificateNode> nodes;
  nlohmann::json verdict;
  std::vector<std::string> notes;

  const CertificateNode& node(const std::string& id) const;
  bool has(const std::string& id) const;
  nlohmann::json to_json() const;
};

struct PipelineOptions {
  BundleOptions bundle;
  int degree_cap = 32;
};

/// h^5(X, omega_X^2) != 0 for n = 3.  Throws Error(HypothesisFailed) unless 2 <= p <= n = 3;
/// a failed containment propagates as Error(ContainmentFailed).
Certificate theorem_kod_fails(std::uint32_t p, int n = 3, const PipelineOptions& options = {});

/// L = omega_X^-2 with h^5(X, L^-1) != 0.  Throws Error(InvalidParams) for bad (p,n) and
/// Error(HypothesisFailed) when -omega_X does not match the very ample family.
Certificate kodaira_violation(std::uint32_t p, int n = 3, const PipelineOptions& options = {});

struct ConeReport {
  int dim_Z = 0;
  bool not_cm = false;
  int witness_i = 0;
  int witness_q = 0;
  int witness_power = 0;
  DimInterval witness_bound;
  int index = 0;
  bool omega_Z_line_bundle = false;
  bool canonical = false;
  std::vector<std::string> assumptions;
  Certificate certificate;
};

ConeReport cone_certificate(std::uint32_t p, int n = 3, const PipelineOptions& options = {});

struct CmEntry {
  int q = 0;
  int i = 0;
  DimInterval h;
  std::string source;
};

/// h^i(X, L^q) for 0 < i < dim X, L = omega_X^-1.  Only q in {-2,-1,0,1} is reachable;
/// other q throw Error(WindowExceeded).
std::vector<CmEntry> cm_window(std::uint32_t p, int n, int q, const PipelineOptions& options = {});

/// Effective truth of every node: its own holds flag, every input, and (when
/// drop_assumed) no ASSUMED node anywhere upstream.  Throws Error(InvalidParams) on a
/// dangling input or a cycle.
std::map<std::string, bool> evaluate(const Certificate& cert, bool drop_assumed = false);

/// Recomputes every COMPUTED node of a serialized certificate from its recipe and
/// returns one message per node whose payload differs.
std::vector<std::string> replay(const nlohmann::json& cert, const PipelineOptions& options = {});

enum class Format { Json, Csv, Text };
Format parse_format(std::string_view name);
std::string emit(const Certificate& cert, Format format);

}  // namespace frobcoh
