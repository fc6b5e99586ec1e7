#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sgf/group.hpp"

namespace sgf {

FiniteGroup cyclic_group(int n);
// Dihedral group of order 2n; r^i s^e has index i + n*e.
FiniteGroup dihedral_group(int n);
// Permutations of k points in lexicographic order.
FiniteGroup symmetric_group(int k);
FiniteGroup quaternion_group();
FiniteGroup elementary_abelian(int p, int k);

struct CatalogEntry {
  std::string name;
  std::string recipe;
  FiniteGroup group;
};

class Catalog {
 public:
  Catalog() = default;
  Catalog(int max_order, std::vector<CatalogEntry> entries);

  int max_order() const noexcept { return max_order_; }
  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  std::vector<const CatalogEntry*> of_order(int n) const;
  // Throws NotFound.
  const CatalogEntry& get(const std::string& name) const;
  const CatalogEntry* find(const std::string& name) const;

 private:
  int max_order_ = 0;
  std::vector<CatalogEntry> entries_;
};

// Cyclic, symmetric S3/S4, Q8, dihedral and all direct products up to
// max_order, one representative per isomorphism class.
Catalog generate_catalog(int max_order);

void write_catalog(const Catalog& c, const std::filesystem::path& dir);
Catalog read_catalog(const std::filesystem::path& dir);

// Catalog at SGF_CATALOG_DIR when set and large enough, else generated
// in memory. Cached per process.
const Catalog& default_catalog(int max_order = 64);

}  // namespace sgf
