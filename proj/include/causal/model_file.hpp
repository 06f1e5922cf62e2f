#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causal/beliefs.hpp"
#include "causal/markov.hpp"

namespace causal {

struct SourcePos {
  std::size_t line = 1;
  std::size_t col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> expected = {});
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

/// NAME=value pairs as written; values are indices or labels.
using Bindings = std::vector<std::pair<std::string, std::string>>;

struct VarDecl {
  std::string name;
  std::size_t card = 0;
  std::vector<std::string> labels;
  SourcePos pos;
};

struct EdgeDecl {
  std::string tail, head;
  SourcePos pos;
};

struct CptRow {
  Bindings parents;
  std::vector<double> probs;
  SourcePos pos;
};

struct CptDecl {
  std::string node;
  std::vector<std::string> parents;
  std::vector<CptRow> rows;
  SourcePos pos;
};

struct BeliefCell {
  Bindings outcome;
  double mass = 0.0;
  SourcePos pos;
};

struct BeliefDecl {
  Bindings policy;
  std::vector<BeliefCell> cells;
  SourcePos pos;
};

struct ModelFile {
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<EdgeDecl> edges;
  std::vector<CptDecl> cpts;
  std::vector<BeliefDecl> beliefs;
  bool generate_markov = false;
};

/// Equality of content, ignoring source positions.
bool same_content(const ModelFile& a, const ModelFile& b);

/// Grammar:
///   model      := "model" NAME stmt*
///   stmt       := vardecl | edgedecl | cptblock | familyblock | "generate" ":" "markov"
///   vardecl    := "var" NAME ":" INT ("labels" NAME+)?
///   edgedecl   := "edge" NAME "->" NAME
///   cptblock   := "cpt" NAME ("|" NAME+)? "{" row+ "}"
///   row        := bindings? ":" REAL+
///   familyblock:= "belief" "do" "(" bindings? ")" "{" cell+ "}"
///   cell       := bindings? ":" REAL
///   bindings   := NAME "=" value ("," NAME "=" value)*
/// `#` starts a comment. Throws ParseError for syntax and semantic errors.
ModelFile parse_model(std::string_view text);
std::string print_model(const ModelFile& m);

struct LoadedModel {
  ModelFile file;
  JointTable::SpacePtr space;
  Dag graph;
  std::optional<MarkovModel> markov;
  std::optional<BeliefFamily> family;
  std::vector<std::vector<std::string>> labels;  // per variable; empty when none

  /// Index of a value token (label or integer) for variable v.
  std::size_t value_index(Var v, std::string_view token) const;
  std::string value_label(Var v, std::size_t value) const;
};

/// Builds the space, graph, Markov model and belief family. With a seed and
/// no CPTs, strictly positive random CPTs are drawn. Semantic problems are
/// reported as ParseError at the offending declaration.
LoadedModel load_model(const ModelFile& file, std::optional<std::uint64_t> seed = std::nullopt);
LoadedModel load_model_text(std::string_view text, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace causal
