#pragma once

#include <string>

#include "gk/presentation.hpp"
#include "gk/terms.hpp"

namespace gk {

// Presentation source, one statement per line, "#" starts a comment:
//
//   group NAME
//   object NAME [zero]
//   stab STABOBJ of OBJ via HOM          # HOM : OBJ -> STABOBJ
//   hom NAME : OBJ -> OBJ
//   compose F ; G = (H | id(OBJ) | 0)    # F;G means "G after F"
//   sum SOBJ = LEFT (+) RIGHT inj IL IR proj PL PR
//   homotopic F ~ G
//   splitexact NAME : F G S sum SOBJ
//   rep REPOBJ for OBJ via ISO invvia ISOINV
//       [link corner C to C' via STABISO]...
//       [link split S to S' sumvia LEG]...
//
// Declaration order does not matter; names are resolved after reading the
// whole source. Errors are ParseError with line/column.
Presentation parse_presentation(const std::string& text);

// Term syntax: words are atoms joined by ";", atoms are
//   NAME | id(OBJ) | inv(CORNER) | theta(SPLIT)
// sums join words with "+"/"-", and 0(OBJ,OBJ) is the empty sum.
FormalSum parse_term(const Presentation& p, const std::string& text);

}  // namespace gk
