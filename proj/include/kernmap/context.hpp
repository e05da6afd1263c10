#pragma once

// One-stop bundle for a domain: grid, the two cached linear solvers, the
// harmonic frame, and the calibrated sign flags.  Everything downstream
// (assemblies, verification, the command line tool) works off one of
// these.  Heap members keep internal cross-references stable when the
// context is moved.

#include <memory>
#include <optional>
#include <vector>

#include "kernmap/geometry.hpp"
#include "kernmap/green.hpp"
#include "kernmap/harmonic.hpp"
#include "kernmap/szego.hpp"
#include "kernmap/types.hpp"

namespace kernmap {

class DomainContext {
 public:
  static DomainContext build(DomainSpec spec, int m, std::optional<cplx> base_point = {},
                             std::vector<cplx> sources = {}) {
    DomainContext ctx;
    ctx.spec_ = std::make_unique<DomainSpec>(std::move(spec));
    ctx.grid_ = std::make_unique<BoundaryGrid>(discretize(*ctx.spec_, m));
    ctx.szego_ = std::make_unique<SzegoSolver>(*ctx.grid_);
    ctx.dirichlet_ = std::make_unique<DirichletSolver>(*ctx.grid_);
    ctx.frame_ = std::make_unique<HarmonicFrame>(*ctx.grid_, *ctx.dirichlet_);
    ctx.flags_ = calibrate_signs(*ctx.grid_, *ctx.dirichlet_, *ctx.frame_, *ctx.szego_);

    if (base_point) {
      if (!ctx.grid_->contains(*base_point)) throw ConfigError("point not in domain");
      ctx.base_ = *base_point;
    } else {
      ctx.base_ = interior_probes(*ctx.grid_, 1, 5.0 * ctx.grid_->max_spacing)[0];
    }
    if (sources.empty()) {
      ctx.sources_.push_back(ctx.base_);
    } else {
      for (const cplx& w : sources)
        if (!ctx.grid_->contains(w)) throw ConfigError("point not in domain");
      ctx.sources_ = std::move(sources);
    }
    return ctx;
  }

  const DomainSpec& spec() const { return *spec_; }
  const BoundaryGrid& grid() const { return *grid_; }
  const SzegoSolver& szego() const { return *szego_; }
  const DirichletSolver& dirichlet() const { return *dirichlet_; }
  const HarmonicFrame& frame() const { return *frame_; }
  SignFlags flags() const { return flags_; }
  cplx base_point() const { return base_; }
  const std::vector<cplx>& sources() const { return sources_; }

  GreenAssembly assembly(cplx w) const {
    return GreenAssembly(*grid_, *dirichlet_, *frame_, *szego_, w, flags_);
  }

 private:
  std::unique_ptr<DomainSpec> spec_;
  std::unique_ptr<BoundaryGrid> grid_;
  std::unique_ptr<SzegoSolver> szego_;
  std::unique_ptr<DirichletSolver> dirichlet_;
  std::unique_ptr<HarmonicFrame> frame_;
  SignFlags flags_;
  cplx base_ = 0.0;
  std::vector<cplx> sources_;
};

}  // namespace kernmap
