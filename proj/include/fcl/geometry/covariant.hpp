#pragma once

#include <functional>

#include "fcl/geometry/local_geometry.hpp"

namespace fcl {

// A tensor field given by how to build its jet from the local geometry at a
// point. Scalars are rank-0 fields.
struct TensorField {
  std::function<JetTensor(LocalGeometry&)> build;
  int min_order = 0;  // jet order the build itself needs
};

// T_{,l}: y-derivative of every entry, appended as a new last lower slot.
JetTensor v_derivative(const JetTensor& T);

// T_{|l} for the Berwald connection, appended as a new last lower slot:
// dT/dx^l - N^m_l dT/dy^m, plus Gamma^a_ml T^..m.. per upper slot and minus
// Gamma^m_bl T_..m.. per lower slot.
JetTensor h_derivative(LocalGeometry& geo, const JetTensor& T);

// Contraction of slot `slot` of T with the vector v^s (slot removed).
JetTensor contract(const JetTensor& T, int slot, const JetTensor& v);
// Contraction of slot `slot` of T with y^s.
JetTensor contract_y(LocalGeometry& geo, const JetTensor& T, int slot);

// T_{|s} y^s through the full horizontal derivative.
JetTensor geodesic_contraction(LocalGeometry& geo, const JetTensor& T);

// Same quantity along the geodesic flow: y^s dT/dx^s - 2 G^m dT/dy^m with
// N-corrections per slot, which uses N^m_s y^s = 2G^m and Gamma^a_ms y^s = N^a_m
// instead of the connection contracted afterwards.
JetTensor flow_derivative(LocalGeometry& geo, const JetTensor& T);

TensorValue v_derivative(const MetricField& metric, const TensorField& T, const BasePoint& p,
                         int order = kDefaultJetOrder);
TensorValue h_derivative(const MetricField& metric, const TensorField& T, const BasePoint& p,
                         int order = kDefaultJetOrder);
TensorValue geodesic_contraction(const MetricField& metric, const TensorField& T, const BasePoint& p,
                                 int order = kDefaultJetOrder);

}  // namespace fcl
