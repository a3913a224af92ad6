// SPDX-License-Identifier: Apache-2.0
//
// satcoex - coexistence simulator for mm-wave cellular networks and
// passive weather-satellite sensors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "satcoex/sgp4core.hpp"

#include <cmath>

namespace satcoex
{

Sgp4GravityConstants sgp4_wgs72()
{
    Sgp4GravityConstants g;
    g.mu = 398600.8;
    g.radiusearthkm = 6378.135;
    g.xke = 60.0 / std::sqrt(g.radiusearthkm * g.radiusearthkm * g.radiusearthkm / g.mu);
    g.tumin = 1.0 / g.xke;
    g.j2 = 0.001082616;
    g.j3 = -0.00000253881;
    g.j4 = -0.00000165597;
    g.j3oj2 = g.j3 / g.j2;
    return g;
}

std::string sgp4_error_message(int error)
{
    switch (error)
    {
    case 0:
        return "ok";
    case 1:
        return "mean eccentricity out of range";
    case 2:
        return "mean motion not positive";
    case 4:
        return "semi-latus rectum not positive";
    case 6:
        return "satellite decayed";
    case 10:
        return "deep-space element set not supported";
    default:
        return "unknown error";
    }
}

namespace
{

constexpr double twopi = 2.0 * 3.14159265358979323846;
constexpr double x2o3 = 2.0 / 3.0;

// Un-Kozai the mean motion and recover the semi-major axis family.
void sgp4_initl(const Sgp4GravityConstants &g, double ecco, double inclo, double no_kozai,
                double &no_unkozai, double &ao, double &con41, double &con42,
                double &cosio, double &cosio2, double &eccsq, double &omeosq,
                double &posq, double &rp, double &rteosq, double &sinio)
{
    eccsq = ecco * ecco;
    omeosq = 1.0 - eccsq;
    rteosq = std::sqrt(omeosq);
    cosio = std::cos(inclo);
    cosio2 = cosio * cosio;

    const double ak = std::pow(g.xke / no_kozai, x2o3);
    const double d1 = 0.75 * g.j2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq);
    double del = d1 / (ak * ak);
    const double adel =
        ak * (1.0 - del * del - del * (1.0 / 3.0 + 134.0 * del * del / 81.0));
    del = d1 / (adel * adel);
    no_unkozai = no_kozai / (1.0 + del);

    ao = std::pow(g.xke / no_unkozai, x2o3);
    sinio = std::sin(inclo);
    const double po = ao * omeosq;
    con42 = 1.0 - 5.0 * cosio2;
    con41 = -con42 - cosio2 - cosio2;
    posq = po * po;
    rp = ao * (1.0 - ecco);
}

} // namespace

Sgp4State sgp4_init(double jdsatepoch, double ecco, double inclo, double nodeo,
                    double argpo, double mo, double no_kozai, double bstar)
{
    Sgp4State s;
    s.grav = sgp4_wgs72();
    s.ecco = ecco;
    s.inclo = inclo;
    s.nodeo = nodeo;
    s.argpo = argpo;
    s.mo = mo;
    s.no_kozai = no_kozai;
    s.bstar = bstar;
    s.jdsatepoch = jdsatepoch;

    const auto &g = s.grav;
    const double ss = 78.0 / g.radiusearthkm + 1.0;
    const double qzms2ttemp = (120.0 - 78.0) / g.radiusearthkm;
    const double qzms2t = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;

    double ao, con42, cosio, cosio2, eccsq, omeosq, posq, rp, rteosq, sinio;
    sgp4_initl(g, ecco, inclo, no_kozai, s.no_unkozai, ao, s.con41, con42, cosio, cosio2,
               eccsq, omeosq, posq, rp, rteosq, sinio);

    if (!(omeosq >= 0.0) || !(s.no_unkozai >= 0.0))
    {
        s.error = 2;
        return s;
    }
    if (twopi / s.no_unkozai >= 225.0)
    {
        s.error = 10;
        return s;
    }

    s.isimp = 0;
    if (rp < 220.0 / g.radiusearthkm + 1.0)
        s.isimp = 1;

    double sfour = ss;
    double qzms24 = qzms2t;
    const double perige = (rp - 1.0) * g.radiusearthkm;
    if (perige < 156.0)
    {
        sfour = perige - 78.0;
        if (perige < 98.0)
            sfour = 20.0;
        const double qzms24temp = (120.0 - sfour) / g.radiusearthkm;
        qzms24 = qzms24temp * qzms24temp * qzms24temp * qzms24temp;
        sfour = sfour / g.radiusearthkm + 1.0;
    }
    const double pinvsq = 1.0 / posq;

    const double tsi = 1.0 / (ao - sfour);
    s.eta = ao * ecco * tsi;
    const double etasq = s.eta * s.eta;
    const double eeta = ecco * s.eta;
    const double psisq = std::abs(1.0 - etasq);
    const double coef = qzms24 * std::pow(tsi, 4.0);
    const double coef1 = coef / std::pow(psisq, 3.5);
    const double cc2 =
        coef1 * s.no_unkozai *
        (ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq)) +
         0.375 * g.j2 * tsi / psisq * s.con41 * (8.0 + 3.0 * etasq * (8.0 + etasq)));
    s.cc1 = bstar * cc2;
    double cc3 = 0.0;
    if (ecco > 1.0e-4)
        cc3 = -2.0 * coef * tsi * g.j3oj2 * s.no_unkozai * sinio / ecco;
    s.x1mth2 = 1.0 - cosio2;
    s.cc4 = 2.0 * s.no_unkozai * coef1 * ao * omeosq *
            (s.eta * (2.0 + 0.5 * etasq) + ecco * (0.5 + 2.0 * etasq) -
             g.j2 * tsi / (ao * psisq) *
                 (-3.0 * s.con41 * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta)) +
                  0.75 * s.x1mth2 * (2.0 * etasq - eeta * (1.0 + etasq)) *
                      std::cos(2.0 * argpo)));
    s.cc5 = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq);

    const double cosio4 = cosio2 * cosio2;
    const double temp1 = 1.5 * g.j2 * pinvsq * s.no_unkozai;
    const double temp2 = 0.5 * temp1 * g.j2 * pinvsq;
    const double temp3 = -0.46875 * g.j4 * pinvsq * pinvsq * s.no_unkozai;
    s.mdot = s.no_unkozai + 0.5 * temp1 * rteosq * s.con41 +
             0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4);
    s.argpdot = -0.5 * temp1 * con42 +
                0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4) +
                temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4);
    const double xhdot1 = -temp1 * cosio;
    s.nodedot = xhdot1 + (0.5 * temp2 * (4.0 - 19.0 * cosio2) +
                          2.0 * temp3 * (3.0 - 7.0 * cosio2)) *
                             cosio;
    s.omgcof = bstar * cc3 * std::cos(argpo);
    s.xmcof = 0.0;
    if (ecco > 1.0e-4)
        s.xmcof = -x2o3 * coef * bstar / eeta;
    s.nodecf = 3.5 * omeosq * xhdot1 * s.cc1;
    s.t2cof = 1.5 * s.cc1;
    if (std::abs(cosio + 1.0) > 1.5e-12)
        s.xlcof = -0.25 * g.j3oj2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio);
    else
        s.xlcof = -0.25 * g.j3oj2 * sinio * (3.0 + 5.0 * cosio) / 1.5e-12;
    s.aycof = -0.5 * g.j3oj2 * sinio;
    const double delmotemp = 1.0 + s.eta * std::cos(mo);
    s.delmo = delmotemp * delmotemp * delmotemp;
    s.sinmao = std::sin(mo);
    s.x7thm1 = 7.0 * cosio2 - 1.0;

    if (s.isimp != 1)
    {
        const double cc1sq = s.cc1 * s.cc1;
        s.d2 = 4.0 * ao * tsi * cc1sq;
        const double temp = s.d2 * tsi * s.cc1 / 3.0;
        s.d3 = (17.0 * ao + sfour) * temp;
        s.d4 = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * s.cc1;
        s.t3cof = s.d2 + 2.0 * cc1sq;
        s.t4cof = 0.25 * (3.0 * s.d3 + s.cc1 * (12.0 * s.d2 + 10.0 * cc1sq));
        s.t5cof = 0.2 * (3.0 * s.d4 + 12.0 * s.cc1 * s.d3 + 6.0 * s.d2 * s.d2 +
                         15.0 * cc1sq * (2.0 * s.d2 + cc1sq));
    }

    double r[3], v[3];
    sgp4_propagate(s, 0.0, r, v);
    return s;
}

bool sgp4_propagate(Sgp4State &s, double tsince, double r[3], double v[3])
{
    const auto &g = s.grav;
    const double vkmpersec = g.radiusearthkm * g.xke / 60.0;
    s.error = 0;

    // secular gravity and drag
    const double xmdf = s.mo + s.mdot * tsince;
    const double argpdf = s.argpo + s.argpdot * tsince;
    const double nodedf = s.nodeo + s.nodedot * tsince;
    double argpm = argpdf;
    double mm = xmdf;
    const double t2 = tsince * tsince;
    double nodem = nodedf + s.nodecf * t2;
    double tempa = 1.0 - s.cc1 * tsince;
    double tempe = s.bstar * s.cc4 * tsince;
    double templ = s.t2cof * t2;

    if (s.isimp != 1)
    {
        const double delomg = s.omgcof * tsince;
        const double delmtemp = 1.0 + s.eta * std::cos(xmdf);
        const double delm = s.xmcof * (delmtemp * delmtemp * delmtemp - s.delmo);
        const double temp = delomg + delm;
        mm = xmdf + temp;
        argpm = argpdf - temp;
        const double t3 = t2 * tsince;
        const double t4 = t3 * tsince;
        tempa = tempa - s.d2 * t2 - s.d3 * t3 - s.d4 * t4;
        tempe = tempe + s.bstar * s.cc5 * (std::sin(mm) - s.sinmao);
        templ = templ + s.t3cof * t3 + t4 * (s.t4cof + tsince * s.t5cof);
    }

    double nm = s.no_unkozai;
    double em = s.ecco;
    double inclm = s.inclo;
    if (nm <= 0.0)
    {
        s.error = 2;
        return false;
    }
    const double am = std::pow(g.xke / nm, x2o3) * tempa * tempa;
    nm = g.xke / std::pow(am, 1.5);
    em = em - tempe;

    if (em >= 1.0 || em < -0.001)
    {
        s.error = 1;
        return false;
    }
    if (em < 1.0e-6)
        em = 1.0e-6;
    mm = mm + s.no_unkozai * templ;
    double xlm = mm + argpm + nodem;

    nodem = std::fmod(nodem, twopi);
    argpm = std::fmod(argpm, twopi);
    xlm = std::fmod(xlm, twopi);
    mm = std::fmod(xlm - argpm - nodem, twopi);

    const double sinim = std::sin(inclm);
    const double cosim = std::cos(inclm);

    // long period periodics
    const double ep = em;
    const double xincp = inclm;
    const double argpp = argpm;
    const double nodep = nodem;
    const double mp = mm;
    const double sinip = sinim;
    const double cosip = cosim;

    const double axnl = ep * std::cos(argpp);
    double temp = 1.0 / (am * (1.0 - ep * ep));
    const double aynl = ep * std::sin(argpp) + temp * s.aycof;
    const double xl = mp + argpp + nodep + temp * s.xlcof * axnl;

    // Kepler's equation
    const double u = std::fmod(xl - nodep, twopi);
    double eo1 = u;
    double tem5 = 9999.9;
    int ktr = 1;
    double sineo1 = 0.0, coseo1 = 1.0;
    while (std::abs(tem5) >= 1.0e-12 && ktr <= 10)
    {
        sineo1 = std::sin(eo1);
        coseo1 = std::cos(eo1);
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl;
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
        if (std::abs(tem5) >= 0.95)
            tem5 = tem5 > 0.0 ? 0.95 : -0.95;
        eo1 = eo1 + tem5;
        ktr = ktr + 1;
    }

    // short period preliminary quantities
    const double ecose = axnl * coseo1 + aynl * sineo1;
    const double esine = axnl * sineo1 - aynl * coseo1;
    const double el2 = axnl * axnl + aynl * aynl;
    const double pl = am * (1.0 - el2);
    if (pl < 0.0)
    {
        s.error = 4;
        return false;
    }

    const double rl = am * (1.0 - ecose);
    const double rdotl = std::sqrt(am) * esine / rl;
    const double rvdotl = std::sqrt(pl) / rl;
    const double betal = std::sqrt(1.0 - el2);
    temp = esine / (1.0 + betal);
    const double sinu = am / rl * (sineo1 - aynl - axnl * temp);
    const double cosu = am / rl * (coseo1 - axnl + aynl * temp);
    double su = std::atan2(sinu, cosu);
    const double sin2u = (cosu + cosu) * sinu;
    const double cos2u = 1.0 - 2.0 * sinu * sinu;
    temp = 1.0 / pl;
    const double temp1 = 0.5 * g.j2 * temp;
    const double temp2 = temp1 * temp;

    const double mrt =
        rl * (1.0 - 1.5 * temp2 * betal * s.con41) + 0.5 * temp1 * s.x1mth2 * cos2u;
    su = su - 0.25 * temp2 * s.x7thm1 * sin2u;
    const double xnode = nodep + 1.5 * temp2 * cosip * sin2u;
    const double xinc = xincp + 1.5 * temp2 * cosip * sinip * cos2u;
    const double mvt = rdotl - nm * temp1 * s.x1mth2 * sin2u / g.xke;
    const double rvdot = rvdotl + nm * temp1 * (s.x1mth2 * cos2u + 1.5 * s.con41) / g.xke;

    // orientation vectors
    const double sinsu = std::sin(su);
    const double cossu = std::cos(su);
    const double snod = std::sin(xnode);
    const double cnod = std::cos(xnode);
    const double sini = std::sin(xinc);
    const double cosi = std::cos(xinc);
    const double xmx = -snod * cosi;
    const double xmy = cnod * cosi;
    const double ux = xmx * sinsu + cnod * cossu;
    const double uy = xmy * sinsu + snod * cossu;
    const double uz = sini * sinsu;
    const double vx = xmx * cossu - cnod * sinsu;
    const double vy = xmy * cossu - snod * sinsu;
    const double vz = sini * cossu;

    r[0] = mrt * ux * g.radiusearthkm;
    r[1] = mrt * uy * g.radiusearthkm;
    r[2] = mrt * uz * g.radiusearthkm;
    v[0] = (mvt * ux + rvdot * vx) * vkmpersec;
    v[1] = (mvt * uy + rvdot * vy) * vkmpersec;
    v[2] = (mvt * uz + rvdot * vz) * vkmpersec;

    if (mrt < 1.0)
    {
        s.error = 6;
        return false;
    }
    return true;
}

} // namespace satcoex
