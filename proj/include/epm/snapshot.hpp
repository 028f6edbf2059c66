#pragma once

#include <string>

#include "epm/particle_system.hpp"

namespace epm {

// Particle snapshot CSV: header id,kind,x,y[,z],u,v[,w],p,V with 17
// significant digits per value.
void write_snapshot_csv(const ParticleSystem& sys, const std::string& path);
ParticleSystem read_snapshot_csv(const std::string& path);

// Legacy-VTK polydata with the same fields as point data.
void write_snapshot_vtk(const ParticleSystem& sys, const std::string& path);

}  // namespace epm
