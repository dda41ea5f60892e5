#include "stgp/mesh_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "stgp/error.hpp"
#include "text_util.hpp"

namespace stgp {

using detail::format_double;
using detail::parse_double;
using detail::parse_index;

Mesh read_mesh(std::string_view text) {
  detail::LineCursor in(text);
  {
    const auto& l = in.next("header");
    if (l.tokens.size() != 2 || l.tokens[0] != "stgp-mesh" || l.tokens[1] != "1") {
      throw ParseError("expected header 'stgp-mesh 1'", l.number);
    }
  }
  const auto& dim_line = in.expect("dim", 1);
  const std::size_t dim = parse_index(dim_line.tokens[1], dim_line.number);
  if (dim != 2 && dim != 3) throw ParseError("dim must be 2 or 3", dim_line.number);

  const auto& node_header = in.expect("nodes", 1);
  const std::size_t node_count = parse_index(node_header.tokens[1], node_header.number);
  std::vector<Point> nodes(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    const auto& l = in.next("node record");
    if (l.tokens.size() != dim + 1) {
      throw ParseError("node record needs an id and " + std::to_string(dim) + " coordinates",
                       l.number);
    }
    if (parse_index(l.tokens[0], l.number) != i) {
      throw ParseError("node ids must be consecutive from 0, expected " + std::to_string(i),
                       l.number);
    }
    for (std::size_t k = 0; k < dim; ++k) nodes[i][k] = parse_double(l.tokens[k + 1], l.number);
  }

  const auto& element_header = in.expect("elements", 1);
  const std::size_t element_count = parse_index(element_header.tokens[1], element_header.number);
  std::vector<Simplex> elements(element_count);
  for (std::size_t e = 0; e < element_count; ++e) {
    const auto& l = in.next("element record");
    if (l.tokens.size() != dim + 2) {
      throw ParseError("element record needs an id and " + std::to_string(dim + 1) + " nodes",
                       l.number);
    }
    if (parse_index(l.tokens[0], l.number) != e) {
      throw ParseError("element ids must be consecutive from 0, expected " + std::to_string(e),
                       l.number);
    }
    for (std::size_t v = 0; v <= dim; ++v) {
      const std::size_t n = parse_index(l.tokens[v + 1], l.number);
      if (n >= node_count) {
        throw ParseError("node index " + std::to_string(n) + " out of range (" +
                             std::to_string(node_count) + " nodes)",
                         l.number);
      }
      elements[e][v] = n;
    }
  }

  const auto& mu_header = in.expect("mu", 1);
  const std::size_t mu_count = parse_index(mu_header.tokens[1], mu_header.number);
  if (mu_count != element_count) {
    throw ParseError("expected " + std::to_string(element_count) + " mu entries, header says " +
                         std::to_string(mu_count),
                     mu_header.number);
  }
  std::vector<double> mu(element_count, 0.0);
  std::vector<bool> seen(element_count, false);
  for (std::size_t k = 0; k < mu_count; ++k) {
    const auto& l = in.next("mu record");
    if (l.tokens.size() != 2) throw ParseError("mu record is '<element-id> <value>'", l.number);
    const std::size_t e = parse_index(l.tokens[0], l.number);
    if (e >= element_count) {
      throw ParseError("mu entry for unknown element " + std::to_string(e), l.number);
    }
    if (seen[e]) throw ParseError("duplicate mu entry for element " + std::to_string(e), l.number);
    seen[e] = true;
    mu[e] = parse_double(l.tokens[1], l.number);
    if (!(mu[e] > 0.0)) throw ParseError("mu must be strictly positive", l.number);
  }
  if (!in.done()) throw ParseError("trailing content after mu section", in.line_number());

  try {
    return Mesh(static_cast<int>(dim), std::move(nodes), std::move(elements), std::move(mu));
  } catch (const MeshError& err) {
    // Report degenerate elements against the element section.
    throw ParseError(err.what(), element_header.number + 1 + err.element());
  }
}

std::string write_mesh(const Mesh& mesh) {
  std::ostringstream out;
  const int d = mesh.dim();
  out << "stgp-mesh 1\n" << "dim " << d << "\n" << "nodes " << mesh.node_count() << "\n";
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    out << i;
    for (int k = 0; k < d; ++k) out << ' ' << format_double(mesh.node(i)[k]);
    out << '\n';
  }
  out << "elements " << mesh.element_count() << "\n";
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    out << e;
    for (int v = 0; v <= d; ++v) out << ' ' << mesh.element(e)[v];
    out << '\n';
  }
  out << "mu " << mesh.element_count() << "\n";
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    out << e << ' ' << format_double(mesh.mu(e)) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace stgp
