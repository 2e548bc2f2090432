#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace famedkit {

class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, int line = 0, int column = 0);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// edge slots of a tetrahedron, by vertex pair
inline constexpr std::array<std::pair<int, int>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int edge_slot_index(int i, int j);

// angle letter carried by an edge slot: 0 = a, 1 = b, 2 = c
inline constexpr std::array<int, 6> kEdgeAngle{0, 1, 2, 2, 1, 0};

struct FaceRef {
    int tet = -1;
    int face = -1;
    bool operator==(const FaceRef&) const = default;
};

struct Tetrahedron {
    int index = 0;
    int sign = 1;
    std::array<FaceRef, 4> glue{};
};

struct PeripheralCurve {
    std::string name;
    long nu = 0;
    std::vector<long> C, Cp, Cpp;
};

struct EdgeClass {
    std::vector<int> slots;  // 6*tet + slot
    int multiplicity() const { return static_cast<int>(slots.size()); }
};

struct FaceClass {
    std::string name;
    FaceRef first;
    FaceRef second;
};

struct OrderedTriangulation {
    std::string name;
    bool knot_complement = false;
    std::vector<Tetrahedron> tets;
    std::vector<PeripheralCurve> curves;
    std::vector<FaceClass> faces;
    std::vector<EdgeClass> edge_classes;
    std::vector<int> slot_class;
    bool explicit_face_order = false;

    int size() const { return static_cast<int>(tets.size()); }
    std::vector<int> signs() const;
    const PeripheralCurve* curve(const std::string& name) const;
    int face_class_of(int tet, int face) const;
};

struct ParseOptions {
    bool validate = true;
};

OrderedTriangulation parse_triangulation(const std::string& text, const ParseOptions& opt = {});
OrderedTriangulation load_triangulation(const std::string& path, const ParseOptions& opt = {});
std::string serialize(const OrderedTriangulation& tri);

// orbit closure of the edge identifications induced by the face pairings
std::vector<EdgeClass> edge_classes(const OrderedTriangulation& tri);

// recompute face and edge classes after tetrahedra or gluings were edited
void finalize(OrderedTriangulation& tri, bool validate = true);

bool isomorphic_identity(const OrderedTriangulation& a, const OrderedTriangulation& b);

std::string preset_dir();
std::string resolve_triangulation_path(const std::string& name_or_path);
std::vector<std::string> preset_names();

}
