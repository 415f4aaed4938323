#pragma once

#include <string>

#include "convergence.hpp"
#include "density.hpp"
#include "graphgen.hpp"
#include "gso.hpp"

namespace nugg {

// Graph container with its generating context, as stored in graph.json.
struct GraphBundle {
    GeometricGraph graph;
    AngularDensity density = AngularDensity::uniform();
};

// shortest round-trippable decimal form of a double
std::string format_double(double v);

// write text to path atomically (temp file + rename)
void write_file_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

// {space:…, density:…, config:…, nodes:[{theta, r?, rho, hub, radius}], edges:[[i,j]]}
std::string graph_to_json(const GraphBundle& b);
GraphBundle graph_from_json(const std::string& text);

// node table: id,theta,r,rho,hub,radius,degree
std::string graph_nodes_csv(const GeometricGraph& g);
// edge list: u,v
std::string graph_edges_csv(const GeometricGraph& g);

std::string matrix_to_csv(const DenseMatrix& m);
std::string matrix_to_coo(const DenseMatrix& m);  // "row col value" lines, nonzeros

std::string report_to_csv(const ConvergenceReport& r);   // N,trial,mse,sup_err
std::string report_to_json(const ConvergenceReport& r);

}  // namespace nugg
