#pragma once

#include "qrg/errors.hpp"
#include "qrg/exactnum.hpp"
#include "qrg/matrix.hpp"
#include "qrg/group_table.hpp"
#include "qrg/matrix_group.hpp"
#include "qrg/perm.hpp"
#include "qrg/pauli.hpp"
#include "qrg/coxeter.hpp"
#include "qrg/impref.hpp"
#include "qrg/autgrp.hpp"
#include "qrg/geom.hpp"
#include "qrg/qcgroups.hpp"
#include "qrg/verify.hpp"
