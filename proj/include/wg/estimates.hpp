#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wg/field.hpp"
#include "wg/grid3.hpp"
#include "wg/norms.hpp"
#include "wg/words.hpp"

namespace wg {

// The weighted pointwise and L2 estimates certified on the manufactured
// corpus.  Implicit constants are unspecified in the statements, so what is
// checked is boundedness of the LHS/RHS ratio and its stability under grid
// refinement, never a particular constant.
enum class EstimateId {
  SOBOLEV1,
  SOBOLEV2,
  HIDANO1,
  KS_DELTA,
  KS_DTDT,
  KS_DTDX,
  DELTA_DRDR,
  KS_L2,
  WAVE_DECAY,
  KG_DECAY,
  ODE_LEMMA,
};

std::string estimate_name(EstimateId id);

struct EstimateCase {
  EstimateId estimate_id;
  FieldJet field;
  std::vector<double> t_samples;
  VectorFieldWord word;  // the alpha in Gamma^alpha (empty when unused)
};

struct RatioReport {
  double ratio = 0.0;            // sup over samples of LHS/RHS
  double rhs_floor = 0.0;        // smallest RHS encountered
  double refinement_drift = 0.0; // relative ratio change between grid levels
  std::size_t samples = 0;
  bool degenerate = false;       // rhs_floor below floor: flagged, not asserted
  // region-split ratios for the pointwise Klainerman-Sideris checks
  double ratio_inner = 0.0;      // r <= t/2
  double ratio_outer = 0.0;      // r >= t/2
};

struct VerifierOptions {
  double exclusion_radius = 1e-2;  // pointwise checks skip r < this
  double rhs_floor = 1e-12;
  double grid_radius = 0.0;        // 0 = auto from field support
  std::size_t radial_nodes = 181;
  double cartesian_spacing = 0.55;
  bool with_refinement = true;
};

RatioReport check_sobolev1(const FieldJet& f, const std::vector<double>& ts,
                           const VerifierOptions& opt = {});
RatioReport check_sobolev2(const FieldJet& f, const std::vector<double>& ts,
                           const VectorFieldWord& word, const VerifierOptions& opt = {});
RatioReport check_hidano1(const FieldJet& f, const std::vector<double>& ts,
                          const VectorFieldWord& word, const VerifierOptions& opt = {});

enum class KsWhich { Delta, DtDt, DtDx };
RatioReport check_ks_pointwise(const FieldJet& f, const std::vector<double>& ts,
                               KsWhich which, const VerifierOptions& opt = {});
RatioReport check_delta_drdr(const FieldJet& f, const std::vector<double>& ts,
                             const VerifierOptions& opt = {});
RatioReport check_ks_l2(const FieldJet& f, const std::vector<double>& ts,
                        const VectorFieldWord& word, const VerifierOptions& opt = {});

// One row of the verifier suite output.
struct SuiteRow {
  std::string estimate;
  std::string field;
  std::string word;
  double t_min = 0.0, t_max = 0.0;
  RatioReport report;
  bool asserted = false;  // false when degenerate/skipped
  bool pass = true;
};

struct SuiteOptions {
  double ratio_max = 50.0;   // calibrated once, fixed (R_max)
  double drift_max = 0.05;
  VerifierOptions verifier;
};

// Runs every estimate over the >= 20 member manufactured corpus.
std::vector<SuiteRow> run_estimate_suite(const SuiteOptions& opt = {});

// Sum over all words beta with |beta| <= max_len (over the given alphabet) of
// the L2 norms of derivative-slot values of Gamma^beta f; shared by several
// RHS evaluations.  Values are quadrature on the grid.
struct WordNormSums {
  double sum_deriv_l2 = 0.0;      // sum_beta || |d Gamma^beta f| ||_2
  double sum_tmr_d2_l2 = 0.0;     // sum_beta || <t-r> |d^2 Gamma^beta f| ||_2
  double sum_tpr_box_l2 = 0.0;    // sum_beta || <t+r> Box Gamma^beta f ||_2
};

WordNormSums word_norm_sums(const FieldJet& f, double t, const SpaceGrid3& grid,
                            const std::vector<Letter>& alphabet, std::size_t max_len,
                            bool need_tmr_d2, bool need_tpr_box);

}  // namespace wg
