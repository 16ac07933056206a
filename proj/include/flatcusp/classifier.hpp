#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatcusp/form_builder.hpp"
#include "flatcusp/qform.hpp"

namespace flatcusp {

enum class Condition { None, Mod3, Mod4, A4 };

std::string condition_name(Condition c);
/// Throws ParseError.
Condition parse_condition(const std::string& name);

struct FlatManifoldRecord {
  std::string id;
  std::string name;
  int dimension = 0;
  std::string holonomy_name;
  int holonomy_order = 0;
  int holonomy_exponent = 0;
  int b1 = 0;
  Condition condition = Condition::None;
  std::vector<int> rep_blocks;  // ranks of the rational irreducible summands

  friend bool operator==(const FlatManifoldRecord&, const FlatManifoldRecord&) = default;
};

/// The embedded orientable flat 3- and 4-manifold records.
const std::vector<FlatManifoldRecord>& manifest();
/// Throws UnknownRecord.
const FlatManifoldRecord& find_record(const std::string& id);

enum class Outcome { Appears, DoesNotAppear, NotObstructed };
std::string outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::NotObstructed;
  std::vector<std::string> reasons;
  // Diagonal form equivalent to q, laid out as block + complement + <1,-1>.
  std::optional<DiagonalForm> witness;
};

/// q of signature (4,1). Appears verdicts come with a verified witness.
/// Throws WrongSignature, UnknownRecord.
Verdict classify_3d(const FlatManifoldRecord& record, const FormInvariants& q,
                    const SearchBudget& budget = {});
/// q of signature (5,1).
Verdict classify_4d(const FlatManifoldRecord& record, const FormInvariants& q,
                    const SearchBudget& budget = {});
/// Dispatch on record.dimension.
Verdict classify(const FlatManifoldRecord& record, const FormInvariants& q, const SearchBudget& budget = {});

/// Whether d is a square in Q_p for every prime p = 1 mod `modulus`, by the
/// conductor of Q(sqrt d).
bool square_for_all_residue_primes(const SquareClass& d, long modulus);

/// Necessary conditions for odd exponent e >= 3 holonomy with b1 in {0,1,2}.
/// Throws BadParameters, WrongSignature.
Verdict odd_holonomy_obstruction(int b1, long exponent, const FormInvariants& q);

/// (C_3)^k holonomy with b1 = 0 in dimension n (even, >= 4). Throws BadParameters.
Verdict c3k_b1zero_classify(long n, const FormInvariants& q);

/// (C_p)^k holonomy with b1 = 0 in dimension n, a multiple of p - 1.
/// Throws BadParameters.
Verdict cpk_b1zero_disc_obstruction(long p, long n, const FormInvariants& q);

/// One (C_p)^k, b1 = 0 factor of a product family. A fill factor takes the
/// dimension left over by the fixed ones.
struct FamilyFactor {
  long p = 3;
  long dimension = 0;
  bool fill = false;
};

struct FamilyDescriptor {
  std::vector<FamilyFactor> factors;

  /// "5:28,3:fill". Throws ParseError.
  static FamilyDescriptor parse(const std::string& text);
  std::string to_string() const;
};

/// Discriminant classes the family admits in dimension n. Throws
/// UnsupportedFamily, BadParameters.
std::set<SquareClass> admissible_discriminants(const FamilyDescriptor& family, long n);
/// Union over both parity branches of the fill factor.
std::set<SquareClass> discriminant_branches(const FamilyDescriptor& family);

/// True iff the admissible discriminant sets at dimension n are disjoint.
bool incompatible_pair(const FamilyDescriptor& a, const FamilyDescriptor& b, long n);

/// At least three odd entries. Throws EmptyList.
bool three_odd_blocks_guarantee(const std::vector<int>& block_ranks);

}  // namespace flatcusp
