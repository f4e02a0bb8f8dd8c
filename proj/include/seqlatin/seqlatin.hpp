#ifndef SEQLATIN_SEQLATIN_HPP
#define SEQLATIN_SEQLATIN_HPP

#include "seqlatin/error.hpp"
#include "seqlatin/numtheory.hpp"
#include "seqlatin/modmat.hpp"
#include "seqlatin/group.hpp"
#include "seqlatin/finite_group.hpp"
#include "seqlatin/limits.hpp"
#include "seqlatin/search.hpp"
#include "seqlatin/rotational.hpp"
#include "seqlatin/graceful.hpp"
#include "seqlatin/harmonious.hpp"
#include "seqlatin/directed_template.hpp"
#include "seqlatin/latin.hpp"
#include "seqlatin/pipelines.hpp"
#include "seqlatin/oracle.hpp"
#include "seqlatin/json_io.hpp"

#endif  // SEQLATIN_SEQLATIN_HPP
