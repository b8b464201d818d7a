#pragma once

#include <a2lab/integer.hpp>
#include <a2lab/unipoly.hpp>
#include <a2lab/multipoly.hpp>
#include <a2lab/surface.hpp>
#include <a2lab/birational.hpp>
#include <a2lab/diophantine.hpp>
#include <a2lab/symbolic.hpp>
#include <a2lab/conic_pell.hpp>
#include <a2lab/curves.hpp>
#include <a2lab/io.hpp>
#include <a2lab/cli.hpp>
