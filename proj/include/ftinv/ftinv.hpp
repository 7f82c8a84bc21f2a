#pragma once

#include "algebra.hpp"
#include "builders.hpp"
#include "conway.hpp"
#include "cyclotomic.hpp"
#include "diagrams.hpp"
#include "fixtures.hpp"
#include "fusion.hpp"
#include "kauffman.hpp"
#include "link.hpp"
#include "manifold.hpp"
#include "quantum.hpp"
#include "spin.hpp"
#include "verify.hpp"
