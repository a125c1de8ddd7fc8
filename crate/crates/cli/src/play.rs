//! Hot-seat terminal play. Reads moves line by line, so a scripted stdin
//! replays a game exactly.

use std::io::{BufRead, Write};

use tapsilou_core::{GameSession, Phase, SessionConfig};

use crate::CliError;

enum Input<T> {
    Value(T),
    Quit,
}

struct Terminal<R, W> {
    input: R,
    out: W,
}

impl<R: BufRead, W: Write> Terminal<R, W> {
    /// Prompt until `parse` accepts the line. `Quit` on EOF or `q`.
    fn ask<T>(
        &mut self,
        prompt: &str,
        mut parse: impl FnMut(&str) -> Result<T, String>,
    ) -> Result<Input<T>, CliError> {
        loop {
            write!(self.out, "{prompt}")?;
            self.out.flush()?;
            let mut line = String::new();
            if self.input.read_line(&mut line)? == 0 {
                writeln!(self.out)?;
                return Ok(Input::Quit);
            }
            let line = line.trim();
            if line.eq_ignore_ascii_case("q") || line.eq_ignore_ascii_case("quit") {
                return Ok(Input::Quit);
            }
            match parse(line) {
                Ok(v) => return Ok(Input::Value(v)),
                Err(msg) => writeln!(self.out, "{msg}")?,
            }
        }
    }

    fn ask_exponent(&mut self, who: &str, symbol: &str, n: u32) -> Result<Input<u32>, CliError> {
        let prompt = format!("{who}, choose {symbol} in 0..{} (q quits): ", n - 1);
        self.ask(&prompt, |s| match s.parse::<u32>() {
            Ok(v) if v < n => Ok(v),
            _ => Err(format!("please enter a whole number from 0 to {}", n - 1)),
        })
    }
}

pub fn play(input: impl BufRead, out: impl Write, config: SessionConfig) -> Result<(), CliError> {
    let mut term = Terminal { input, out };
    let n = config.n;
    let mut game = 1u64;
    let mut session = new_game(&config, game, config.tosser_bankroll, config.gambler_bankroll)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(
        term.out,
        "Quantum tapsilou in the rotation group of order {n}. The tosser wins on |00>, the gambler on |11>."
    )?;

    loop {
        if session.phase() == Phase::Settled {
            let (t, g) = (session.tosser_bankroll(), session.gambler_bankroll());
            game += 1;
            match new_game(&config, game, t, g) {
                Ok(s) => session = s,
                Err(_) => {
                    writeln!(
                        term.out,
                        "Bankrolls can no longer cover a bet of {}. Game over.",
                        config.bet
                    )?;
                    return Ok(());
                }
            }
            writeln!(term.out, "New game.")?;
        }

        if session.bet_adjustable() {
            let current = session.bet();
            let prompt = format!("Bet for the next round (currently {current}, Enter keeps it): ");
            let probe = session.clone();
            let bet = term.ask(&prompt, |s| {
                if s.is_empty() {
                    return Ok(current);
                }
                let bet = s.parse::<u64>().map_err(|_| "please enter a whole number".to_string())?;
                probe.clone().set_bet(bet).map_err(|e| e.to_string())?;
                Ok(bet)
            })?;
            match bet {
                Input::Value(bet) if bet != current => session.set_bet(bet)?,
                Input::Value(_) => {}
                Input::Quit => return Ok(()),
            }
        }

        writeln!(
            term.out,
            "Round {}: bet {}, tosser {}, gambler {}",
            session.history().len() + 1,
            session.bet(),
            session.tosser_bankroll(),
            session.gambler_bankroll()
        )?;
        let Input::Value(k) = term.ask_exponent("Tosser", "k", n)? else {
            return Ok(());
        };
        session.submit_tosser_move(k)?;
        let Input::Value(l) = term.ask_exponent("Gambler", "l", n)? else {
            return Ok(());
        };
        session.submit_gambler_move(l)?;

        let p = session.pending_profile().expect("both moves submitted");
        writeln!(
            term.out,
            "Outcome probabilities: tosser {:.6}, gambler {:.6}, draw {:.6}",
            p.p_tosser, p.p_gambler, p.p_draw
        )?;
        let outcome = session.resolve()?;
        writeln!(
            term.out,
            "Measured: {}. Bankrolls: tosser {}, gambler {}",
            outcome.label(),
            session.tosser_bankroll(),
            session.gambler_bankroll()
        )?;
    }
}

fn new_game(
    config: &SessionConfig,
    game: u64,
    tosser_bankroll: u64,
    gambler_bankroll: u64,
) -> tapsilou_core::Result<GameSession> {
    GameSession::new(
        format!("game-{game}"),
        SessionConfig {
            tosser_bankroll,
            gambler_bankroll,
            seed: config.seed.wrapping_add(game - 1),
            ..*config
        },
    )
}
