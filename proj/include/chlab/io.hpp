#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "chlab/besov.hpp"
#include "chlab/experiments.hpp"
#include "chlab/fields.hpp"
#include "chlab/lagrangian_solver.hpp"
#include "chlab/peakon.hpp"
#include "chlab/reference.hpp"

namespace chlab::io {

/// %.17g, with inf/nan spelled out.
std::string number(double v);

void write_field_csv(std::ostream& os, const EulerianField& f);          // x,u[,eta]
void write_state_csv(std::ostream& os, const LagrangianState& s);        // xi,y,U,y_xi,U_xi[,V]
/// One JSON object per diagnostics entry; `state_files[i]`, when present,
/// names the full-state CSV written for diagnostics entry i.
void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj,
                            const std::vector<std::pair<std::size_t, std::string>>& state_files = {});
void write_ensemble_csv(std::ostream& os, const peakon::PeakonEnsemble& e);  // p,q
void write_peakon_jsonl(std::ostream& os, const peakon::PeakonRun& run);     // {t,p,q,H}
void write_picard_csv(std::ostream& os, const PicardReport& r);              // n,increment
void write_audit_csv(std::ostream& os, const std::vector<besov::AuditRow>& rows);
void write_stability_csv(std::ostream& os, const experiments::StabilityReport& r);
void write_stability_jsonl(std::ostream& os, const experiments::StabilityReport& r);
void write_dependence_csv(std::ostream& os, const experiments::DependenceReport& r);
void write_w1inf_csv(std::ostream& os, const experiments::W1InfReport& r);

/// Opens `path` for writing, throwing std::runtime_error with the path on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace chlab::io
