#pragma once

#include "arskit/metric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arskit {

enum class Level { isometry, rescaled, deformed };
std::string_view to_string(Level level);
Level parse_level(std::string_view text);

enum class StepKind { automorphism, rescaling, sign_flip, frame_change };
std::string_view to_string(StepKind kind);

/**
 * @brief One normalization move applied to (D, frame).
 *
 * automorphism P: D -> P D P^-1, Y_i -> P Y_i.
 * rescaling lambda > 0: D -> lambda D, Y_i -> lambda Y_i.
 * sign_flip target 0: D -> -D; target i >= 1: Y_i -> -Y_i.
 * frame_change M: Y_j -> sum_i Y_i M_ij (orthogonal M keeps the metric, others deform it).
 */
struct NormalizationStep {
  StepKind kind = StepKind::automorphism;
  std::optional<ExactMat> matrix;
  Mat matrix_approx;
  std::optional<Surd> scalar;
  double scalar_approx = 0.0;
  int flip_target = 0;
  std::string note;

  bool exact() const;
  static NormalizationStep automorphism(const ExactMat& P, std::string note = {});
  static NormalizationStep automorphism_approx(const Mat& P, std::string note = {});
  static NormalizationStep rescaling(const Surd& lambda, std::string note = {});
  static NormalizationStep rescaling_approx(double lambda, std::string note = {});
  static NormalizationStep sign_flip(int target, std::string note = {});
  static NormalizationStep frame_change(const ExactMat& M, std::string note = {});
  static NormalizationStep frame_change_approx(const Mat& M, std::string note = {});
};

struct NormalizationTrace {
  std::vector<NormalizationStep> steps;
  bool exact() const;
};

/// Raw ARS data without validation, exact form.
struct ArsData {
  GroupTag group = GroupTag::heis3;
  ExactMat D;
  std::vector<ExactMat> frame;
  friend bool operator==(const ArsData& l, const ArsData& r) {
    return l.group == r.group && l.D == r.D && l.frame == r.frame;
  }
};

/// Raw ARS data in double precision.
struct ArsDataApprox {
  GroupTag group = GroupTag::heis3;
  Mat D;
  std::vector<Vec> frame;
};

ArsData ars_data(const ARSSpec& spec);
ArsDataApprox to_approx(const ArsData& data);
/// Exact replay; throws std::domain_error if some step is only approximate.
ArsData apply_trace(const ArsData& data, const NormalizationTrace& trace);
ArsDataApprox apply_trace_approx(const ArsDataApprox& data, const NormalizationTrace& trace);

struct Parameter {
  std::string name;
  Surd value;
  double approx = 0.0;
  bool exact = true;
  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct ClassInvariants {
  std::vector<std::string> eigenvalues;
  std::string z_equation;
  std::string zx;
  std::string tangency;
  std::optional<int> components;
  std::optional<bool> z_normal;
  std::string locus_kind;
  friend bool operator==(const ClassInvariants&, const ClassInvariants&) = default;
};

/**
 * @brief Canonical representative of an ARS at one normalization level.
 */
struct CanonicalClass {
  GroupTag group = GroupTag::heis3;
  Level level = Level::isometry;
  /// "aff2", "heis-sub (i)" ... "heis-sub (viii)", "heis-nonsub 1.i.1" ...
  std::string family;
  std::vector<Parameter> parameters;
  bool exact = true;
  ExactMat derivation;
  std::vector<ExactMat> frame;
  Mat derivation_approx;
  std::vector<Vec> frame_approx;
  ClassInvariants invariants;
  std::vector<std::string> flags;
  std::vector<std::string> diagnostics;

  const Parameter* find(std::string_view name) const;
  /// Throws std::out_of_range if absent.
  const Surd& param(std::string_view name) const;
  bool has_flag(std::string_view flag) const;
  /// Exact spec of the representative; throws std::domain_error if approximate.
  ARSSpec spec() const;
  ArsData data() const;

  friend bool operator==(const CanonicalClass& l, const CanonicalClass& r);
};

struct Classified {
  CanonicalClass cls;
  NormalizationTrace trace;
};

struct IsometryElement {
  std::string label;
  Mat P;
  std::optional<ExactMat> P_exact;
  /// +1 when P D P^-1 = D, -1 when it equals -D.
  int derivation_sign = 1;
};

/// Rotation-type family P_{theta,eps} with P D P^-1 = sigma D.
struct RotationFamily {
  int epsilon = 1;
  int sigma = 1;
  bool full_circle = false;
  std::vector<double> angles;
};

struct IsometryGroupDescriptor {
  /// Z_X, whose left translations are isometries.
  std::string translations;
  std::vector<IsometryElement> stabilizer;
  std::vector<RotationFamily> rotation_families;
  std::string summary() const;
};

// Aff+(2)
Classified aff2_isometry_class(const ARSSpec& spec);
Classified aff2_rescaled_class(const CanonicalClass& isometry_class);
Classified aff2_deformed_class(const CanonicalClass& rescaled_class);
IsometryGroupDescriptor aff2_isometry_group(const ARSSpec& spec);

// Heis(3), distribution a subalgebra
bool heis_delta_is_subalgebra(const ARSSpec& spec);
Classified heis_sub_isometry_class(const ARSSpec& spec);
/// May be approximate when c is irrational (nested radical).
Classified heis_sub_rescaled_class(const CanonicalClass& isometry_class);
Classified heis_sub_deformed_class(const CanonicalClass& isometry_class);
IsometryGroupDescriptor heis_sub_isometry_group(const CanonicalClass& cls);

// Heis(3), distribution not a subalgebra
Classified heis_nonsub_isometry_class(const ARSSpec& spec);
Classified heis_nonsub_rescaled_class(const CanonicalClass& isometry_class);
Classified heis_nonsub_deformed_class(const CanonicalClass& isometry_class);
IsometryGroupDescriptor heis_nonsub_isometry_group(const CanonicalClass& cls);

struct FullClassification {
  Classified isometry;
  Classified rescaled;
  Classified deformed;
  IsometryGroupDescriptor group;
};

/// Dispatches on group and subalgebra type. Throws std::invalid_argument for invalid specs.
FullClassification classify(const ARSSpec& spec);

/// Z as "poly=0" with the leading coefficient scaled to 1.
std::string describe_Z(const ARSSpec& spec);
/// Z_X as "{e}", "x=y=0", a parameterized curve in s, or a plane equation.
std::string describe_ZX(const ARSSpec& spec);
std::vector<std::string> describe_eigenvalues(const ExactMat& block);

/// Line-oriented "key = value" record; keys carry the given prefix.
std::string serialize(const CanonicalClass& cls, std::string_view prefix = "class.");
/// Inverse of serialize; throws std::invalid_argument on malformed records.
CanonicalClass parse_canonical_class(std::string_view text, std::string_view prefix = "class.");

}  // namespace arskit
